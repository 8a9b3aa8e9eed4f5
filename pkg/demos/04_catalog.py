"""Build a catalog, save it, check it against the published counts, export one diagram.

The same steps are available from the shell::

    mobius-flows census --max-points 5 --out cat.json
    mobius-flows verify --catalog cat.json
    mobius-flows export --catalog cat.json --code <hex> --format graph-text
"""
import tempfile
from pathlib import Path

from mobius_flows import build_catalog, diff_against_expected, export_diagram, load_catalog, render_counts_table
from mobius_flows.catalog import save_catalog

catalog = build_catalog(5)
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "catalog.json"
    save_catalog(catalog, path)
    print(f"wrote {path.stat().st_size} bytes")
    assert load_catalog(path) == catalog

print(render_counts_table(catalog))

report = diff_against_expected(catalog)
print(report.render())
print("verify would exit with", report.exit_status)

entry = catalog.level(4).saddle_node[0]
print(f"\n{entry.kind} bifurcation {entry.code}:")
print(export_diagram(catalog, entry.code, "graph-text"))
