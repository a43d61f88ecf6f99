# The command-line interface
#
# Each subcommand reads one JSON document and prints one JSON document.  Here the
# documents are fed through run(), which is what the koszulkit script calls.

# %%
import io
import json
import tempfile
from pathlib import Path

from koszulkit.cli import run

jobs = {
    "koszul-check": {"p": 3, "truncation": 6, "algebra": {"kind": "exterior", "n": 3}},
    "criterion-b": {"p": 2, "truncation": 6, "ideal": {"n": 4, "generators": [
        {"terms": [{"c": 1, "m": [0, 1]}, {"c": 1, "m": [2, 3]}]}]}},
    "five-term": {"p": 2, "truncation": 6, "fixture": "F2xF2"},
    "theorem-c": {"p": 2, "truncation": 5, "group": "(D(4) * F(2))"},
}

with tempfile.TemporaryDirectory() as tmp:
    for command, doc in jobs.items():
        path = Path(tmp) / f"{command}.json"
        path.write_text(json.dumps(doc))
        out = io.StringIO()
        code = run([command, "--input", str(path)], stdout=out)
        result = json.loads(out.getvalue())
        print(f"{command:13s} exit {code}  verdict {result['verdict']}")

# %% Same thing from a shell:
#   echo '{"p": 2, "truncation": 7, "search": {"n": 4, "r": 1}}' \
#       | koszulkit search --seed 1 --count 100 --jobs 4
