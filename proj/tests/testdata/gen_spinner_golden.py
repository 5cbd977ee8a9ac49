#!/usr/bin/env python3
# Copyright 2026 The FRR Toolkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes spinner_golden.json, the layout/lookup contract shared by the C++
randomizer and the browser spinner.

Independent of the C++ code: layouts are built here with exact fractions and
every angle's directive is found by a linear scan over half-open segments.
"""

import json
import math
from fractions import Fraction as F
from pathlib import Path


def layout(p_truth, forced, interleave):
    k = len(forced)
    pieces = []
    if all(f == 0 for f in forced):
        pieces = [(p_truth, None)]
    else:
        sub = p_truth / (k * interleave)
        for j, f in enumerate(forced):
            pieces += [(sub, None)] * interleave
            pieces.append((f, j))
    segments, cumulative, start = [], F(0), 0.0
    for width, category in pieces:
        if width == 0:
            continue
        cumulative += width
        end = float(cumulative * 360)
        segments.append((start, end, category))
        start = end
    assert cumulative == 1
    return segments


def directive(category):
    if category is None:
        return {"kind": "truthful"}
    return {"kind": "forced", "category": category + 1}


def lookup(segments, angle):
    for start, end, category in segments:
        if start <= angle < end:
            return category
    raise ValueError(angle)


def vectors(segments):
    angles = {0.0, math.nextafter(360.0, 0.0)}
    for start, end, _ in segments:
        angles.update({start, (start + end) / 2, math.nextafter(end, 0.0)})
        if end < 360.0:
            angles.add(end)
    return [{"angle": a, "directive": directive(lookup(segments, a))}
            for a in sorted(angles)]


CASES = [
    ("quant_k6_three_quarters", {"type": "quant", "k": 6, "p_truth": "3/4",
                                 "p_forced": "1/24"},
     F(3, 4), [F(1, 24)] * 6, 3),
    ("binary_dice", {"type": "binary", "p_truth": "27/36",
                     "p_forced": ["6/36", "3/36"]},
     F(27, 36), [F(6, 36), F(3, 36)], 3),
    ("binary_always_truthful", {"type": "binary", "p_truth": "1",
                                "p_forced": ["0", "0"]},
     F(1), [F(0), F(0)], 3),
    ("quant_k3_zero_forced_block", {"type": "quant", "k": 3, "p_truth": "1/2",
                                    "p_forced": ["1/4", "0", "1/4"]},
     F(1, 2), [F(1, 4), F(0), F(1, 4)], 2),
    ("quant_k6_no_interleave", {"type": "quant", "k": 6, "p_truth": "3/4",
                                "p_forced": "1/24"},
     F(3, 4), [F(1, 24)] * 6, 1),
]


def main():
    out = {"description": "Spinner layouts and angle lookups. Segments are "
                          "half-open [start_deg, end_deg); forced categories "
                          "are 1-based.",
           "layouts": []}
    for name, design, p_truth, forced, interleave in CASES:
        segments = layout(p_truth, forced, interleave)
        out["layouts"].append({
            "name": name,
            "design": design,
            "interleave": interleave,
            "k": len(forced),
            "segments": [{"start_deg": s, "end_deg": e,
                          "directive": directive(c)}
                         for s, e, c in segments],
            "vectors": vectors(segments),
        })
    path = Path(__file__).with_name("spinner_golden.json")
    path.write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main()
