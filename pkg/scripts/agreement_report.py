"""Cross-check the string functions against the compiled grammar for a lexicon."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from sorani_fst.grammar import analyses_agree, default_lexicon
from sorani_fst.lexicon import load_lexicon


@dataclass
class AgreementConfig:
    lexicon: Path | None = None
    extended: bool = False


def main(cfg: AgreementConfig) -> int:
    lex = default_lexicon() if cfg.lexicon is None else load_lexicon(cfg.lexicon)
    report = analyses_agree(lex, extended=cfg.extended)
    for d in report.disagreements:
        print(f"{d.case.label} [{d.check}]: {d.detail}")
    print(f"{len(lex)} entries, {report.checks} checks, {len(report.disagreements)} disagreements")
    return 0 if report.ok else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--lexicon", type=Path)
    p.add_argument("--extended", action="store_true",
                   help="also cover adjective inflection, RA/DIM, objects, present and imperative")
    a = p.parse_args()
    raise SystemExit(main(AgreementConfig(a.lexicon, a.extended)))
