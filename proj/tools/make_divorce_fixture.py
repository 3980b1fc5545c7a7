#!/usr/bin/env python3
# Copyright 2026 The tagdesc Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Builds the divorce-survey fixture: 170 couples, 54 questions rated 0-4.

The survey responses themselves are not shipped. This script
synthesizes responses whose per-cluster "low" (0-2) counts for questions
1-27 equal fixed target counts (LOW_COUNTS); questions 28-54 reuse those
counts with independent draws. Output is deterministic.

Usage: make_divorce_fixture.py OUT_DIR
"""

import csv
import json
import random
import sys
from pathlib import Path

N_QUESTIONS = 54
SIZES = {"1": 90, "2": 80}

# Items per cluster rated 0-2 on questions 1..27.
LOW_COUNTS = {
    "1": [86, 85, 90, 90, 90, 89, 89, 90, 90, 90, 90, 90, 90, 90, 90,
          86, 88, 89, 87, 88, 89, 61, 63, 75, 73, 78, 77],
    "2": [6, 16, 10, 71, 14, 5, 9, 12, 4, 3, 22, 15, 13, 22, 14,
          7, 9, 10, 3, 4, 6, 7, 10, 12, 9, 6, 11],
}


def cluster_ratings(rng, label, n):
    # A latent agreement level per couple correlates answers across questions.
    latent = [rng.gauss(0.0, 1.0) for _ in range(n)]
    rows = [[0] * N_QUESTIONS for _ in range(n)]
    for q in range(N_QUESTIONS):
        low = LOW_COUNTS[label][q % 27]
        order = sorted(range(n), key=lambda i: latent[i] + rng.gauss(0.0, 1.0))
        low_items = set(order[:low])
        for i in range(n):
            rows[i][q] = rng.choice((0, 1, 2)) if i in low_items else rng.choice((3, 4))
    return rows


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240517)

    records = []
    for label, n in SIZES.items():
        for row in cluster_ratings(rng, label, n):
            records.append((label, row))
    rng.shuffle(records)

    header = ["Atr%d" % (q + 1) for q in range(N_QUESTIONS)]
    with open(out / "ratings.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["couple"] + header)
        for i, (_, row) in enumerate(records):
            w.writerow([i + 1] + row)
    with open(out / "labels.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["cluster"])
        for label, _ in records:
            w.writerow([label])

    rules = []
    for q in range(N_QUESTIONS):
        low, high = "t%d" % (2 * q + 1), "t%d" % (2 * q + 2)
        feature = "Atr%d" % (q + 1)
        rules.append({"name": low, "kind": "threshold-below", "feature": feature,
                      "basis": "explicit", "threshold": 3, "complement_of": high})
        rules.append({"name": high, "kind": "threshold-at-or-above", "feature": feature,
                      "basis": "explicit", "threshold": 3, "complement_of": low})
    with open(out / "schema.json", "w") as f:
        json.dump(rules, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main()
