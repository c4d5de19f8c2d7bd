//! Writing a representation as JSON, reading it back, and validating it.

use psl_maniplex::constructions::class1_map;
use psl_maniplex::io::{RepJson, RepRecord};
use psl_maniplex::string_rep::validate;

fn main() -> psl_maniplex::Result<()> {
    let (ctx, rep) = class1_map(13)?;
    let text = serde_json::to_string(&RepJson::from_rep(&ctx, &rep))?;
    println!("{text}");
    let back = RepJson::parse(&text)?;
    let ctx2 = back.context()?;
    let rep2 = back.to_rep(&ctx2)?;
    println!("round trip equal: {}", rep2 == rep);
    println!("valid: {}", validate(&ctx2, &rep2, true)?.ok);
    println!("{}", serde_json::to_string(&RepRecord::new(&ctx2, &rep2)?)?);
    Ok(())
}
