"""Regenerate the frozen group fingerprints from the concrete constructions.

Run from the repository root:  python3 scripts/generate_golden.py
"""

import sys
from pathlib import Path

from weilsurf.groups import GOLDEN_FINGERPRINTS, compute_catalogue_fingerprints, golden_dir, render_golden_fingerprints


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    out_dir = Path(argv[0]) if argv else golden_dir()
    out_dir.mkdir(parents=True, exist_ok=True)
    text = render_golden_fingerprints(compute_catalogue_fingerprints())
    path = out_dir / GOLDEN_FINGERPRINTS
    path.write_text(text)
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
