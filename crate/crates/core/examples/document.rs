use hyperplane_lcs::document::parse_document;
use hyperplane_lcs::report::{run, AnalysisRequest, Format, Sections};

const INPUT: &str = "\
# seven lines with five triple points
name: five-triples
config: {n: 7, flats: [[0, 1, 3], [1, 2, 4], [2, 3, 5], [3, 4, 6], [0, 4, 5]]}
";

fn main() -> hyperplane_lcs::Result<()> {
    let doc = parse_document(INPUT)?;
    println!("parsed {:?} as a {} input", doc.name, doc.input.kind());

    let sections = Sections { lattice: true, lcs: true, ..Sections::NONE };
    let report = run(&AnalysisRequest::text(INPUT).sections(sections).bounds(3, 4, 4))?;
    println!("{}", report.render(Format::Table));

    match parse_document("normals: [[1, 0], [0, 1/0]]") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
