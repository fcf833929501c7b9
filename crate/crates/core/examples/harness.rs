use hyperplane_lcs::harness::{config_harness, graph_harness};

fn main() -> hyperplane_lcs::Result<()> {
    print!("{}", graph_harness(5, 5)?.to_table());
    println!();
    print!("{}", config_harness(7, 4)?.to_table());
    Ok(())
}
