"""Run manifest: config echo, artifact hashes, wall-clock timings.

The manifest lives at <out_dir>/manifest.json and accumulates one entry
per command. Re-running a command with the same config and seed must
reproduce the same output hashes; timings are informational and excluded
from any determinism contract.
"""

import hashlib
import json
import os

from . import __version__


def sha256_file(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def load_manifest(out_dir):
    path = os.path.join(out_dir, "manifest.json")
    if not os.path.exists(path):
        return {"version": __version__, "config": None, "commands": {}}
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def update_manifest(out_dir, command, config_echo, paths, timing_s):
    """Record a command's outputs; returns the manifest dict."""
    man = load_manifest(out_dir)
    man["version"] = __version__
    man["config"] = config_echo
    man["commands"][command] = {
        "hashes": {os.path.basename(p): sha256_file(p) for p in sorted(paths)},
        "timing_s": round(float(timing_s), 6),
    }
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(man, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return man
