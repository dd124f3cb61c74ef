"""Regenerate ``src/webcorpus/data/scripts.tsv`` from the UCD Scripts table.

The range table shipped with fontTools is a faithful transcription of
``Scripts.txt``; this script flattens it into ``start<TAB>end<TAB>code`` rows
(hex code points, inclusive) and records the UCD version in a header comment.

    python tools/gen_script_table.py
"""
import re
from pathlib import Path

import fontTools.unicodedata.Scripts as ucd_scripts

OUT = Path(__file__).resolve().parents[1] / "src" / "webcorpus" / "data" / "scripts.tsv"


def main():
    source = Path(ucd_scripts.__file__).read_text(encoding="utf-8")
    version = re.search(r"Scripts-(\d+\.\d+\.\d+)\.txt", source).group(1)
    starts = ucd_scripts.RANGES
    codes = ucd_scripts.VALUES
    rows = []
    for i, (start, code) in enumerate(zip(starts, codes)):
        end = starts[i + 1] - 1 if i + 1 < len(starts) else 0x10FFFF
        if code == "Zzzz":
            continue
        rows.append(f"{start:04X}\t{end:04X}\t{code}")
    names = "\n".join(f"# name\t{c}\t{n}" for c, n in sorted(ucd_scripts.NAMES.items()))
    OUT.write_text(
        f"# unicode-version\t{version}\n"
        "# Generated from the Unicode Character Database Scripts.txt; do not edit.\n"
        f"{names}\n" + "\n".join(rows) + "\n",
        encoding="utf-8",
    )
    print(f"wrote {len(rows)} ranges (UCD {version}) to {OUT}")


if __name__ == "__main__":
    main()
