"""Write all genus-zero three-point invariants of a space as JSON.

    python3 scripts/gw_table.py A:3,6 --threads 4 > a36.json
"""

import argparse
import json

from qschub.spaces import HomSpace
from qschub.vafa import gw_table

ap = argparse.ArgumentParser()
ap.add_argument("space")
ap.add_argument("--threads", type=int, default=1)
ap.add_argument("--nonzero", action="store_true", help="drop vanishing invariants")
args = ap.parse_args()

rows = gw_table(HomSpace.parse(args.space), threads=args.threads)
if args.nonzero:
    rows = [r for r in rows if r["value"]]
print(json.dumps(rows, sort_keys=True))
