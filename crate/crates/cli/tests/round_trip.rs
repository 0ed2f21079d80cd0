use clap::Parser;
use proptest::prelude::*;
use takiff::args::Cli;

fn weight_text(coords: &[i64], a: i64, semicolon: bool) -> String {
    let c: Vec<String> = coords.iter().map(i64::to_string).collect();
    format!("{}{}{a}", c.join(","), if semicolon { ';' } else { ',' })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_reparses_to_same_request(
        coords in prop::collection::vec(-5i64..6, 1..4),
        a in -6i64..7,
        b in -6i64..7,
        i in 0usize..4,
        semicolon in any::<bool>(),
        tsv in any::<bool>(),
    ) {
        let rank = coords.len().to_string();
        let src = weight_text(&coords, a, semicolon);
        let tgt = weight_text(&coords, b, !semicolon);
        let i = i.to_string();
        let mut argv = vec!["takiff", "ext", "--type", "A", "--rank", &rank, "--i", &i, "--source", &src, "--target", &tgt];
        if tsv {
            argv.extend(["--format", "tsv"]);
        }
        let cli = Cli::try_parse_from(&argv).unwrap();
        let again = Cli::try_parse_from(cli.canonical_args()).unwrap();
        prop_assert_eq!(&again, &cli);
        prop_assert_eq!(again.canonical(), cli.canonical());
    }

    #[test]
    fn repeated_runs_are_byte_identical(n in 2usize..4, r in 1usize..3) {
        let (n, r) = (n.to_string(), r.to_string());
        let argv = ["takiff", "thmIT", "--n", &n, "--r", &r];
        let go = || {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = takiff::run(argv, &mut out, &mut err);
            (code, out, err)
        };
        prop_assert_eq!(go(), go());
    }
}
