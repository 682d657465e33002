"""Generate a few random order types, disguise copies of them, and group.

Each copy is relabeled and pushed through an integer shear, so the
coordinates differ but the order type does not.  The dedup store puts
copies of one order type into one group.

    python demos/dedup_corpus.py
"""

import random
import tempfile
from pathlib import Path

from ordercanon.cli import main
from ordercanon.io import format_points, generate_points
from ordercanon.predicates import PointSet

rng = random.Random(3)
work = Path(tempfile.mkdtemp())
files = []
for k in range(4):
    P = generate_points(8, 2, seed=k, R=6, collinear_frac=0.25)
    for c in range(3):
        perm = list(range(P.n))
        rng.shuffle(perm)
        s = rng.randint(-3, 3)
        # shear (x, y) -> (x + s*y, y) has determinant 1
        q = [(P.points[i][0] + s * P.points[i][1], P.points[i][1]) for i in perm]
        path = work / f"type{k}_copy{c}.txt"
        path.write_text(format_points(PointSet(tuple(q))))
        files.append(str(path))

rng.shuffle(files)
print("groups:")
main(["dedup", "--db", str(work / "store.tsv"), *files])
print("store:", work / "store.tsv")
