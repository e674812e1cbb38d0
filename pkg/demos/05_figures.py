# Regenerate the six figure datasets (CSV + SVG) and run their qualitative checks.
import sys
from pathlib import Path

from rainbow_dkp.sweep import write_figure

out = Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
for k in range(1, 7):
    csv_path, svg_path, checks = write_figure(k, out)
    status = ", ".join(f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in checks.items())
    print(f"fig{k}: {csv_path.name} {svg_path.name}  [{status}]")
