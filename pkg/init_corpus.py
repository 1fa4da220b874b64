#!/usr/bin/env python3
"""
kltsurf - sample graph corpus
Writes the ten graph files used by the golden CLI tests (default: tests/corpus).
"""

import sys
from pathlib import Path

# Add the package directory to Python path
sys.path.append(str(Path(__file__).parent))

from kltsurf.schemas.graph import CurveAttachment
from kltsurf.services.dualgraph import chain, fork, star, validate
from kltsurf.services.graph_file import dump_graph, dump_graph_json

DEFAULT_DIR = Path(__file__).parent / "tests" / "corpus"

# (file name, graph, curve, comment); a .json name selects the JSON encoding
SAMPLE_GRAPHS = [
    ("chain222.graph", chain((2, 2, 2)), None, "A3: three (-2)-curves"),
    ("single3.graph", chain((3,)), None, "cyclic quotient 1/3(1,1)"),
    ("chain32.graph", chain((3, 2)), None, "cyclic quotient 1/5(1,2)"),
    ("chain22_curve.graph", chain((2, 2)), CurveAttachment(c=(1, 0)), "A2 with a curve through E1"),
    ("single4.json", chain((4,)), None, None),
    ("d4_star.graph", star((2, 2, 2), 2), None, "D4: center is vertex 4"),
    ("case2_fork.json", fork((2, 2), 2, (2, 2)), CurveAttachment(c=(0, 0, 0, 0, 1)), None),
    ("case1_chain.graph", chain((2, 2, 2, 2)), CurveAttachment(c=(1, 0, 0, 1)), "curve meets both end curves"),
    ("bad_weight.graph", chain((1, 2)), None, "invalid: a (-1)-curve"),
]

# Not a graph: the edge line has a non-integer vertex on line 3
MALFORMED = ("malformed.graph", "# broken on line 3\nweights: 2 2\nedge: 1 x\n")


def render(name, graph, curve, comment) -> str:
    if name.endswith(".json"):
        return dump_graph_json(graph, curve)
    return dump_graph(graph, curve, comment)


def write_corpus(directory: Path) -> list:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, graph, curve, comment in SAMPLE_GRAPHS:
        (directory / name).write_text(render(name, graph, curve, comment), encoding="utf-8")
        status = "valid" if validate(graph).valid else "invalid"
        print(f"  ✅ {name}: {graph.label()} ({status})")
        written.append(name)
    name, text = MALFORMED
    (directory / name).write_text(text, encoding="utf-8")
    print(f"  ✅ {name}: malformed on purpose")
    written.append(name)
    return written


def main():
    directory = Path(sys.argv[1]) if len(sys.argv) > 1 else DEFAULT_DIR
    print("🚀 Writing kltsurf sample corpus...")
    print("=" * 50)
    try:
        written = write_corpus(directory)
    except OSError as e:
        print(f"\n❌ Could not write corpus: {e}")
        sys.exit(1)
    print("\n" + "=" * 50)
    print(f"✅ {len(written)} files written to {directory}")
    print("\n🔧 Next steps:")
    print(f"  1. python -m kltsurf delta {directory / 'chain222.graph'}")
    print(f"  2. python -m kltsurf lc-test {directory / 'case2_fork.json'} --delta 1/10")


if __name__ == "__main__":
    main()
