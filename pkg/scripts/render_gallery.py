#!/usr/bin/env python3
"""Render the reference galleries and the full 4x6 enumeration as SVG files.

Usage:
    python scripts/render_gallery.py [--out out/gallery]
"""

import argparse
from pathlib import Path

from gridcuts import enumerate_canonical, regenerate_figures
from gridcuts.board import boards_to_svg


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/gallery")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    galleries = regenerate_figures()
    (out / "gallery_3x6.svg").write_text(boards_to_svg(galleries["three_by_six"]))
    (out / "gallery_4x6.svg").write_text(boards_to_svg(galleries["four_by_six"]))

    boards = enumerate_canonical(4, 6)
    (out / "all_canonical_4x6.svg").write_text(boards_to_svg(boards))
    print(f"wrote {out}/gallery_3x6.svg, gallery_4x6.svg and "
          f"all_canonical_4x6.svg ({len(boards)} boards)")


if __name__ == "__main__":
    main()
