"""Run the three extension verifiers over the built-in ring corpus.

Rings whose dimensions rule out a braided Z_q-extension structure come
out as flagged; the rest pass.  Run with ``python demos/extension_structure.py``.
"""
from __future__ import annotations

from fusionkit.classify import (
    full_corpus,
    verify_braided_extension_structure,
    verify_gty_criterion,
    verify_pointed_extension,
)


def main():
    corpus = full_corpus()
    print(f"{len(corpus)} rings in the corpus\n")
    for verify in (verify_pointed_extension, verify_gty_criterion, verify_braided_extension_structure):
        report = verify(corpus)
        print(report.theorem, report.summary())
    report = verify_braided_extension_structure(corpus)
    print("\nflagged rings:")
    for v in report.flagged:
        failed = [k for k, ok in v.clauses.items() if not ok]
        print(f"  {v.instance}: fails {', '.join(failed)}")


if __name__ == "__main__":
    main()
