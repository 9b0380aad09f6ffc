use qsnake_web::core::{fence_view, numeration_json, q_rational_json, snake_view};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn q_rational() {
    let v = parse(q_rational_json("4/5").unwrap());
    assert_eq!(v["prefixed"], "q^-1(q^5+q^4+q^3+q^2)/(q^4+q^3+q^2+q+1)");
    assert_eq!(v["cf"], "[0;1,3,1]");
    assert!(q_rational_json("x").is_err());
}

#[test]
fn snake() {
    let v = parse(snake_view("2/7", -1).unwrap());
    assert_eq!(v["count"], 9);
    assert!(v["class"].is_null());
    let mut perp = 0;
    for i in 0..9 {
        let v = parse(snake_view("2/7", i).unwrap());
        roxmltree::Document::parse(v["svg"].as_str().unwrap()).unwrap();
        perp += (v["class"] == "perp") as usize;
    }
    assert_eq!(perp, 2);
    assert!(snake_view("4000/1001", 0).is_err());
}

#[test]
fn fence() {
    let v = parse(fence_view("4/5", 2).unwrap());
    assert_eq!(v["count"], 9);
    assert_eq!(v["shape"], "y0▷y1◁y2◁y3◁y4");
    roxmltree::Document::parse(v["svg"].as_str().unwrap()).unwrap();
}

#[test]
fn numeration() {
    let v = parse(numeration_json("[2;2,2]").unwrap());
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 17);
    assert_eq!(rows[3]["digits"], serde_json::json!([2, 2, 1]));
    let v = parse(numeration_json("29/12").unwrap());
    assert_eq!(v["cf"], "[2;2,2,2]");
    assert_eq!(v["rows"].as_array().unwrap().len(), 41);
    assert!(numeration_json("[40;1]").is_err());
}
