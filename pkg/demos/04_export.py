"""
Exporting the automaton
=======================

DOT is for looking at the graph (``dot -Tsvg p5.dot > p5.svg``); JSON is
the lossless form and can be loaded back.
"""
# %%
import tempfile
from pathlib import Path

from catalan_automaton import PrimeContext, build
from catalan_automaton.automaton import export_dot, export_json, import_json

a = build(PrimeContext(5), closed_form=False)
out = Path(tempfile.mkdtemp())
(out / "p5.dot").write_text(export_dot(a))
(out / "p5.json").write_text(export_json(a))
print(export_dot(a))

# %%
# Round trip: the reloaded table is identical.
back = import_json((out / "p5.json").read_text())
assert back.delta == a.delta and back.initial == a.initial
print("wrote", *sorted(f.name for f in out.iterdir()), "to", out)
