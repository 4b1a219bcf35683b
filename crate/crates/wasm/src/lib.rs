//! Browser bindings: unroll sequences, compare automata and run a learning
//! session against a simulated teacher.

use num_traits::ToPrimitive;
use serde_json::json;
use wasm_bindgen::prelude::*;

use pfa_core::io::Automaton;
use pfa_core::learning::{exact_learner, learn_z, Session, SimulatedTeacher, ZEquivTeacher};
use pfa_core::pfinite::equivalence;
use pfa_core::{fixtures, Word};

fn parse(text: &str) -> Result<Automaton, String> {
    Automaton::from_json(text).map_err(|e| e.to_string())
}

pub fn fixture_json(name: &str) -> Result<String, String> {
    let a: Automaton = match name {
        "program1" => fixtures::program1().into(),
        "fibonacci" => fixtures::fibonacci()
            .as_z_automaton()
            .expect("integer weights")
            .into(),
        "involutions" => fixtures::involutions().into(),
        "program3" => fixtures::program3().into(),
        "halving" => fixtures::halving().into(),
        _ => return Err(format!("unknown example `{name}`")),
    };
    Ok(a.to_json())
}

/// Values of `a^0 .. a^(count-1)` as exact strings plus float approximations.
pub fn sequence_json(text: &str, count: usize) -> Result<String, String> {
    let a = parse(text)?;
    let [letter] = a.alphabet() else {
        return Err("the sequence view needs a one-letter alphabet".into());
    };
    let mut exact = Vec::with_capacity(count);
    let mut approx = Vec::with_capacity(count);
    for k in 0..count {
        let v = a.eval(&Word::power(letter, k)).map_err(|e| e.to_string())?;
        approx.push(v.to_f64().unwrap_or(f64::NAN));
        exact.push(v.to_string());
    }
    Ok(json!({ "exact": exact, "approx": approx }).to_string())
}

pub fn eval_json(text: &str, word: &str) -> Result<String, String> {
    let a = parse(text)?;
    let w = Word::parse(word, a.alphabet()).map_err(|e| e.to_string())?;
    a.eval(&w).map(|v| v.to_string()).map_err(|e| e.to_string())
}

pub fn compare_json(left: &str, right: &str) -> Result<String, String> {
    let (a, b) = (parse(left)?.lift(), parse(right)?.lift());
    match equivalence(&a, &b).map_err(|e| e.to_string())? {
        None => Ok(json!({ "equivalent": true }).to_string()),
        Some(w) => {
            let x = a.eval(&w).map_err(|e| e.to_string())?;
            let y = b.eval(&w).map_err(|e| e.to_string())?;
            Ok(json!({
                "equivalent": false,
                "witness": w.to_string(),
                "left": x.to_string(),
                "right": y.to_string(),
            })
            .to_string())
        }
    }
}

pub fn learn_json(text: &str, z_mode: bool, max_queries: Option<u64>) -> Result<String, String> {
    let target = parse(text)?;
    let mut teacher = SimulatedTeacher::new(target.lift());
    let (learned, membership, equivalences) = if z_mode {
        let mut wrapper = ZEquivTeacher::new(&mut teacher);
        let mut session = Session::new(&mut wrapper).with_max_queries(max_queries);
        let z = learn_z(&mut session).map_err(|e| e.to_string())?;
        (
            Automaton::from(z),
            session.membership_queries,
            session.equivalence_queries,
        )
    } else {
        let mut session = Session::new(&mut teacher).with_max_queries(max_queries);
        let p = exact_learner(&mut session).map_err(|e| e.to_string())?;
        (
            Automaton::from(p),
            session.membership_queries,
            session.equivalence_queries,
        )
    };
    Ok(json!({
        "automaton": learned.to_json(),
        "dimension": learned.dimension(),
        "membership_queries": membership,
        "equivalence_queries": equivalences,
        "max_counterexample_length": teacher.max_counterexample_length,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn fixture(name: &str) -> Result<String, JsError> {
    fixture_json(name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sequence(text: &str, count: usize) -> Result<String, JsError> {
    sequence_json(text, count).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn evaluate(text: &str, word: &str) -> Result<String, JsError> {
    eval_json(text, word).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn compare(left: &str, right: &str) -> Result<String, JsError> {
    compare_json(left, right).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn learn(text: &str, z_mode: bool, max_queries: Option<u32>) -> Result<String, JsError> {
    learn_json(text, z_mode, max_queries.map(u64::from)).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn value(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn fibonacci_sequence() {
        let fib = fixture_json("fibonacci").unwrap();
        let v = value(&sequence_json(&fib, 6).unwrap());
        assert_eq!(v["exact"], json!(["1", "2", "3", "5", "8", "13"]));
        assert_eq!(v["approx"][5], 13.0);
        let p1 = fixture_json("program1").unwrap();
        let v = value(&sequence_json(&p1, 3).unwrap());
        assert_eq!(v["exact"], json!(["2", "1", "2"]));
        assert!(sequence_json(&fixture_json("program3").unwrap(), 3).is_err());
    }

    #[test]
    fn compare_examples() {
        let fib = fixture_json("fibonacci").unwrap();
        let inv = fixture_json("involutions").unwrap();
        assert_eq!(
            value(&compare_json(&fib, &fib).unwrap())["equivalent"],
            true
        );
        let v = value(&compare_json(&fib, &inv).unwrap());
        assert_eq!(v["equivalent"], false);
        let w = v["witness"].as_str().unwrap();
        assert_eq!(v["left"], eval_json(&fib, w).unwrap());
        assert_eq!(v["right"], eval_json(&inv, w).unwrap());
        assert_ne!(v["left"], v["right"]);
    }

    #[test]
    fn learning_round_trip() {
        for name in ["fibonacci", "program3"] {
            let target = fixture_json(name).unwrap();
            let v = value(&learn_json(&target, false, None).unwrap());
            let learned = v["automaton"].as_str().unwrap();
            assert_eq!(
                value(&compare_json(learned, &target).unwrap())["equivalent"],
                true
            );
        }
        let v = value(&learn_json(&fixture_json("program1").unwrap(), true, None).unwrap());
        assert_eq!(v["dimension"], 2);
        assert!(learn_json(&fixture_json("involutions").unwrap(), false, Some(2)).is_err());
    }

    #[test]
    fn errors() {
        assert!(fixture_json("nope").is_err());
        assert!(eval_json("{}", "").is_err());
        assert_eq!(
            eval_json(&fixture_json("program3").unwrap(), "ab").unwrap(),
            "6"
        );
        assert!(eval_json(&fixture_json("program3").unwrap(), "c").is_err());
    }
}
