//! Reading and writing the JSON measure, series and quad files used by the
//! `nclab` binary.

use nclab::decomposition::shift_wittstock;
use nclab::io::{parse_measure, to_json, MeasureFile, QuadFile, SeriesFile};
use nclab::transforms::herglotz_series;
use nclab::PositiveNCMeasure;

fn main() -> nclab::Result<()> {
    let xi = PositiveNCMeasure::dirac_xi(1);
    let text = to_json(&MeasureFile::from_positive(&xi));
    println!("{text}");
    let back = parse_measure(&text, "xi.json")?;
    println!("roundtrip error {:.1e}", back.to_complex().max_diff(&xi.to_complex())?);

    let h = herglotz_series(&xi, 1)?;
    println!("{}", to_json(&SeriesFile::from_series(&h)));

    let q = shift_wittstock(&PositiveNCMeasure::dirac_xi(4), 1)?;
    let quad = to_json(&QuadFile::from_quad(&q));
    println!("quad file: {} bytes", quad.len());

    match parse_measure("{\"kind\": \"positive\", \"d\": 2}", "truncated.json") {
        Err(err) => println!("rejected: {err}"),
        Ok(_) => println!("accepted"),
    }
    Ok(())
}
