//! wasm-bindgen exports for the static demo page in `www/`.
//!
//! Every export returns a string (SVG or JSON). The `*_json`/`*_view`
//! functions in [`core`] do the work and are callable natively.

use wasm_bindgen::prelude::*;

pub mod core {
    use qsnake::cf::cf_even;
    use qsnake::fence::fence_of_rational;
    use qsnake::numeration::{is_filled, numeration_table};
    use qsnake::render::{fence_svg, snake_svg};
    use qsnake::snake::{snake_of_rational, MatchingClass};
    use qsnake::{q_rational, CfExpansion, Rational};
    use serde_json::json;

    /// Views enumerate every matching, which is `r + s` of them.
    const MAX_OBJECTS: u64 = 5000;

    fn rational(x: &str) -> Result<Rational, String> {
        x.trim().parse().map_err(|e: qsnake::Error| e.to_string())
    }

    fn small_rational(x: &str) -> Result<Rational, String> {
        let x = rational(x)?;
        if x.numer() + x.denom() > MAX_OBJECTS.into() {
            return Err(format!("{x}: numerator + denominator above {MAX_OBJECTS} is too large to draw"));
        }
        Ok(x)
    }

    /// `{"x", "cf", "text", "prefixed", "numerator", "denominator"}`.
    pub fn q_rational_json(x: &str) -> Result<String, String> {
        let x = rational(x)?;
        let q = q_rational(&x).map_err(|e| e.to_string())?;
        Ok(json!({
            "x": x.to_string(),
            "cf": cf_even(&x).map_err(|e| e.to_string())?.to_string(),
            "text": q.to_string(),
            "prefixed": q.to_string_prefixed(),
            "numerator": q.numerator,
            "denominator": q.denominator,
        })
        .to_string())
    }

    /// The snake graph of `x` with its `index`-th matching (none if negative):
    /// `{"svg", "word", "count", "class", "area"}`.
    pub fn snake_view(x: &str, index: i32) -> Result<String, String> {
        let g = snake_of_rational(&small_rational(x)?).map_err(|e| e.to_string())?;
        let ms = g.enumerate_matchings().map_err(|e| e.to_string())?;
        let m = usize::try_from(index).ok().and_then(|i| ms.get(i));
        let class = m.map(|m| match g.classify(m) {
            MatchingClass::Perp => "perp",
            MatchingClass::Par => "par",
        });
        Ok(json!({
            "svg": snake_svg(&g, m),
            "word": g.word(),
            "count": ms.len(),
            "class": class,
            "area": m.map(|m| g.area(m)),
        })
        .to_string())
    }

    /// The fence of `x` with its `index`-th ideal filled:
    /// `{"svg", "shape", "count", "ideal"}`.
    pub fn fence_view(x: &str, index: i32) -> Result<String, String> {
        let f = fence_of_rational(&small_rational(x)?).map_err(|e| e.to_string())?;
        let ideals = f.enumerate_ideals().map_err(|e| e.to_string())?;
        let i = usize::try_from(index).ok().and_then(|i| ideals.get(i));
        Ok(json!({
            "svg": fence_svg(&f, i),
            "shape": f.shape(),
            "count": ideals.len(),
            "ideal": i.map(|i| i.indices()),
        })
        .to_string())
    }

    /// Accepts `[a0;a1,…]` or a rational (expanded in even length):
    /// `{"cf", "rows": [{"n", "digits", "filled"}]}`.
    pub fn numeration_json(input: &str) -> Result<String, String> {
        let s = input.trim();
        let a: CfExpansion = if s.starts_with('[') {
            s.parse().map_err(|e: qsnake::Error| e.to_string())?
        } else {
            cf_even(&rational(s)?).map_err(|e| e.to_string())?
        };
        if a.sum() > 40 {
            return Err(format!("{a}: quotient sum above 40 is too large for a table"));
        }
        let rows = numeration_table(&a).map_err(|e| e.to_string())?;
        let rows: Vec<_> =
            rows.iter().map(|(n, b)| json!({"n": n.to_string(), "digits": b.0, "filled": is_filled(b, &a)})).collect();
        Ok(json!({"cf": a.to_string(), "rows": rows}).to_string())
    }
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn q_rational(x: &str) -> Result<String, JsError> {
    js(core::q_rational_json(x))
}

#[wasm_bindgen]
pub fn snake_view(x: &str, index: i32) -> Result<String, JsError> {
    js(core::snake_view(x, index))
}

#[wasm_bindgen]
pub fn fence_view(x: &str, index: i32) -> Result<String, JsError> {
    js(core::fence_view(x, index))
}

#[wasm_bindgen]
pub fn numeration_table(input: &str) -> Result<String, JsError> {
    js(core::numeration_json(input))
}
