// Categorical CSV to one-hot Boolean matrix.

use std::io::Write;

use boolfact::dataset::{ingest_csv_onehot_labeled, DatasetSpec};
use boolfact::Result;

pub fn run_example() -> Result<()> {
    let mut file = tempfile::NamedTempFile::new()?;
    write!(
        file,
        "id,colour,size,shiny\n\
         1,red,small,1\n\
         2,blue,large,0\n\
         3,red,?,1\n\
         4,green,small,0\n"
    )?;
    let mut spec = DatasetSpec::csv(file.path());
    spec.categorical = vec!["colour".into(), "size".into()];
    spec.binary = vec!["shiny".into()];
    spec.ignore = vec!["id".into()];
    spec.missing = Some("?".into());

    let (x, labels) = ingest_csv_onehot_labeled(&spec)?;
    println!("{}", labels.join(" "));
    print!("{}", x.to_dense_string());
    assert_eq!(x.shape(), (4, 6));
    // the missing size leaves its block empty
    assert_eq!(x.row_ones(2), 2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
