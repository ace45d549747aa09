// Poset, realizer and covering files, and DOT export of the cover graph.

use planedim::gen::standard;
use planedim::io::{cover_dot, parse_poset, parse_realizer, write_covering, write_poset, write_realizer};
use planedim::pipeline::realize_planar_full;
use planedim::pipeline::PipelineOptions;

pub fn run_example() -> Result<String, planedim::Error> {
    let g = standard(3)?;
    let text = write_poset(&g.poset, g.plane.as_ref(), None, Some(&g.labels));
    print!("poset: {text}");
    let input = parse_poset(&text)?;
    let plane = input.require_plane("realize")?;
    let r = realize_planar_full(&input.poset, &input.pairs_or_all(), plane, &PipelineOptions::default())?;
    let realizer = write_realizer(&r.realizer);
    print!("realizer: {realizer}");
    assert_eq!(parse_realizer(&realizer)?, r.realizer);
    print!("covering: {}", write_covering(&r.covering));
    let dot = cover_dot(&input.poset, input.labels.as_deref());
    print!("{dot}");
    Ok(dot)
}

fn main() {
    run_example().expect("file format example");
}
