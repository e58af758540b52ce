"""Print the noun and izafa paradigms next to the bundled reference rows."""

import argparse
from dataclasses import dataclass

from sorani_fst.grammar import (Analyzer, NounFeatures, default_lexicon, inflect_adjective_phrase,
                                inflect_noun, noun_analysis, noun_paradigm_rows, izafa_rows)


@dataclass
class ParadigmConfig:
    check_fst: bool = True


def main(cfg: ParadigmConfig) -> int:
    an = Analyzer.from_lexicon(default_lexicon()) if cfg.check_fst else None
    mismatches = 0
    print("noun paradigm")
    for r in noun_paradigm_rows():
        f = NounFeatures(r["form"], r["number"])
        got = inflect_noun(r["lemma"], f)
        mark = "ok " if got == r["surface"] else "BAD"
        mismatches += got != r["surface"]
        extra = ""
        if an is not None and " " not in got and f.form != "absolute":
            extra = f"  fst: {an.generate(noun_analysis(r['lemma'], f))}"
        print(f"  {mark} {r['lemma']:6} {r['form']:13} {r['number']}  {got:14}{extra}")
    print("adjective phrases")
    for r in izafa_rows():
        got = inflect_adjective_phrase(r["noun"], r["adjective"], r["izafa"],
                                       NounFeatures(r["form"], r["number"]))
        mark = "ok " if got == r["surface"] else "BAD"
        mismatches += got != r["surface"]
        print(f"  {mark} {r['izafa']:5} {r['form']:13} {r['number']}  {got}")
    print(f"{mismatches} mismatches")
    return 1 if mismatches else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--no-fst", action="store_true", help="skip compiling the grammar")
    raise SystemExit(main(ParadigmConfig(check_fst=not p.parse_args().no_fst)))
