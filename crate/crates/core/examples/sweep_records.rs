//! A small sweep streamed to CSV in memory, then read back.

use kloosterman_lab::harness::{read_csv, run_sweep_streaming, Format, RecordWriter, Regime, SweepConfig, TheoremId};

fn main() -> kloosterman_lab::Result<()> {
    let mut cfg = SweepConfig::new(TheoremId::T1);
    cfg.primes = vec![1009, 10_007];
    cfg.lengths = vec![6, 12, 24];
    cfg.ks = vec![2, 3];
    cfg.timings = false;
    cfg.validate()?;

    let mut buf = Vec::new();
    {
        let mut w = RecordWriter::new(Format::Csv, &mut buf)?;
        run_sweep_streaming(&cfg, |r| w.write(r))?;
        w.finish()?;
    }
    let text = String::from_utf8(buf).expect("csv is utf-8");
    print!("{text}");

    let back = read_csv(text.as_bytes())?;
    let out = back.iter().filter(|r| r.regime == Regime::OutOfRegime).count();
    println!("{} records, {out} out of regime", back.len());
    Ok(())
}
