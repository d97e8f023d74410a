use multireg_cli::parse::{parse_sheaf, parse_space};
use proptest::prelude::*;

fn atom(n: u32) -> impl Strategy<Value = String> {
    prop_oneof![
        (-9i64..=9).prop_map(|k| format!("O({k})")),
        (0..=n as i64, -9i64..=9).prop_map(|(p, k)| format!("Om({p},{k})")),
        (0..=n as i64, -9i64..=9).prop_map(|(p, k)| format!("LT({p}, {k})")),
    ]
}

fn term(dims: Vec<u32>) -> impl Strategy<Value = String> {
    let r = dims.len();
    let product = dims.into_iter().map(atom).collect::<Vec<_>>().prop_map(|atoms| atoms.join(" # "));
    let shorthand = prop::collection::vec(-9i64..=9, r)
        .prop_map(|a| format!("O({})", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
    (prop::option::of(1u64..=4), prop_oneof![product, shorthand]).prop_map(|(m, p)| match m {
        Some(m) => format!("{m}*{p}"),
        None => p,
    })
}

fn expr() -> impl Strategy<Value = (String, String)> {
    prop::collection::vec(1u32..=3, 1..=3).prop_flat_map(|dims| {
        let space = dims.iter().map(|n| format!("P{n}")).collect::<Vec<_>>().join("x");
        (Just(space), prop::collection::vec(term(dims), 1..=4).prop_map(|t| t.join(" + ")))
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity((space, text) in expr()) {
        let x = parse_space(&space).unwrap();
        let f = parse_sheaf(&text, &x).unwrap();
        let printed = f.to_string();
        prop_assert_eq!(parse_sheaf(&printed, &x).unwrap(), f, "{} -> {}", text, printed);
    }

    #[test]
    fn garbage_never_panics(text in "[ -~]{0,24}") {
        let x = parse_space("P2xP1").unwrap();
        if let Err(e) = parse_sheaf(&text, &x) {
            prop_assert!(e.column >= 1 && e.column <= text.chars().count() + 1);
            prop_assert!(!e.token.is_empty());
        }
    }
}
