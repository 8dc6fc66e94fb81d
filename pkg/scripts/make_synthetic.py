"""Write a seeded synthetic taxonomy and plain-format query log."""

import argparse
import random
from pathlib import Path

from semagg.synth import random_records, random_taxonomy, render_log
from semagg.taxonomy import dump_taxonomy


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, required=True, help="output directory")
    ap.add_argument("--records", type=int, default=2000)
    ap.add_argument("--concepts", type=int, default=500)
    ap.add_argument("--mean-attrs", type=float, default=4.0)
    ap.add_argument("--topics", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    tax = random_taxonomy(args.concepts, rng)
    recs = random_records(tax, args.records, rng, mean_attrs=args.mean_attrs, n_topics=args.topics)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "taxonomy.tax").write_text(dump_taxonomy(tax), encoding="utf-8")
    (args.out / "queries.txt").write_text("\n".join(render_log(recs, rng)) + "\n", encoding="utf-8")
    print(f"wrote {args.records} queries over {args.concepts} concepts to {args.out}")


if __name__ == "__main__":
    main()
