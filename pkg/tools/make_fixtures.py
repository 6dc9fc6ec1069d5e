"""Regenerate fixtures/ and corpus/.

Expected polynomials come from the skein-template oracle, except the
figure-eight, whose value is a hand-checked reference.

    python tools/make_fixtures.py
"""

from pathlib import Path

from homflypt import diagram as dg
from homflypt.cli import main as cli_main
from homflypt.kauffman import run_kauffman
from homflypt.poly import render

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

FIGURE_EIGHT_PD = """\
# Figure-eight knot; crossing order A, B, C, D with signs +, -, -, +.
X(4,2,5,1)
X(2,7,3,8)
X(6,3,7,4)
X(8,6,1,5)
"""
FIGURE_EIGHT = "a^2 + a^-2 - z^2 - 1"

BRAIDS = {
    "unknot_curl": ([1], 2),
    "trefoil_right": ([1, 1, 1], 2),
    "trefoil_left": ([-1, -1, -1], 2),
    "hopf_positive": ([1, 1], 2),
    "hopf_negative": ([-1, -1], 2),
    "unlink_2": ([1, -1], 2),
    "link_5_crossings": ([1, -2, 1, -2, -2], 3),
    "figure_eight_braid": ([1, -2, 1, -2], 3),
}


def main():
    FIXTURES.mkdir(exist_ok=True)
    (FIXTURES / "figure_eight.pd").write_text(FIGURE_EIGHT_PD)
    f8 = dg.parse_pd(FIGURE_EIGHT_PD)
    (FIXTURES / "figure_eight.json").write_text(dg.dumps(f8, expected=FIGURE_EIGHT))
    for name, (word, strands) in BRAIDS.items():
        d = dg.generate_braid_closure(word, strands)
        expected = render(run_kauffman(d).polynomial)
        (FIXTURES / f"{name}.json").write_text(dg.dumps(d, braid=word, strands=strands, expected=expected))
    (FIXTURES / "bad_labels.pd").write_text("X(4,2,5,1)\nX(2,7,3,8)\nX(6,3,7,4)\nX(8,6,1,9)\n")
    cli_main(["gen", "2-5", "1-10", "500", "--seed", "20240517", "--expected",
              "--dir", str(ROOT / "corpus"), "--prefix", "c"])


if __name__ == "__main__":
    main()
