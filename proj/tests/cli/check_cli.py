"""Exit codes, seed override and determinism of `hardylab run`."""
import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

exe = Path(sys.argv[1])
root = Path(sys.argv[2])
here = Path(__file__).resolve().parent
failures = []


def run(config, out, env=None, extra=()):
    e = dict(os.environ)
    e.pop("HARDYLAB_SEED", None)
    e.update(env or {})
    return subprocess.run([str(exe), "run", str(config), "--out", str(out), *extra],
                          capture_output=True, text=True, env=e)


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def stripped(path):
    def strip(j):
        if isinstance(j, dict):
            return {k: strip(v) for k, v in j.items() if k != "runtime_s"}
        if isinstance(j, list):
            return [strip(v) for v in j]
        return j
    return strip(json.loads(Path(path).read_text()))


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)

    r = run(here / "bad_gamma.json", tmp / "bad")
    expect(r.returncode == 2, "negative gamma exits 2")
    expect("ParameterOutOfRange: weight.γ" in r.stderr, "message names weight.γ")

    r = run(here / "unknown_kind.json", tmp / "unknown")
    expect(r.returncode == 2 and "ConfigError" in r.stderr, "unknown kind exits 2")
    r = run(here / "malformed.json", tmp / "malformed")
    expect(r.returncode == 2 and "ConfigError" in r.stderr, "malformed json exits 2")
    r = run(here / "missing.json", tmp / "missing")
    expect(r.returncode == 2, "missing config exits 2")
    r = run(root / "configs/examples/hardy.json", tmp / "seed", env={"HARDYLAB_SEED": "abc"})
    expect(r.returncode == 2, "non-numeric HARDYLAB_SEED exits 2")

    r = run(here / "strict_oracle.json", tmp / "strict")
    expect(r.returncode == 1, "violated assertion exits 1")
    expect("evolve.oracle_l2_error" in r.stdout, "failure names module and invariant")
    summary = json.loads((tmp / "strict/summary.json").read_text())
    expect(summary["pass"] is False, "summary records the failure")

    carleman = root / "configs/examples/carleman.json"
    a = run(carleman, tmp / "a")
    b = run(carleman, tmp / "b", extra=("--threads", "3"))
    expect(a.returncode == 0 and b.returncode == 0, "carleman example passes")
    expect(stripped(tmp / "a/summary.json") == stripped(tmp / "b/summary.json"), "summary independent of threads")
    csv_a = (tmp / "a/sweep_schrodinger.csv").read_bytes()
    expect(csv_a == (tmp / "b/sweep_schrodinger.csv").read_bytes(), "sweep CSV byte-identical")
    rows = csv_a.decode().strip().split("\n")
    expect(len(rows) == 1 + 4 * 2 * 2 * 2, "one CSV row per (bump, mu, epsilon, R)")
    expect(b"\r" not in csv_a, "CSV uses \\n line endings")
    expect(json.loads((tmp / "a/summary.json").read_text())["seed"] == 11, "config seed used")

    c = run(carleman, tmp / "c", env={"HARDYLAB_SEED": "99"})
    expect(c.returncode == 0, "seed override runs")
    expect(json.loads((tmp / "c/summary.json").read_text())["seed"] == 99, "HARDYLAB_SEED overrides config seed")
    expect((tmp / "c/sweep_schrodinger.csv").read_bytes() != csv_a, "different seed gives different bumps")

    conv = run(root / "configs/examples/convexity.json", tmp / "conv")
    plot = (tmp / "conv/plot_logH.csv").read_text().split("\n")
    expect(conv.returncode == 0 and plot[0] == "t,logH", "convexity plot data is t,logH")

    ce = run(root / "configs/examples/counterexample.json", tmp / "ce")
    header = (tmp / "ce/divergence.csv").read_text().split("\n")[0]
    expect(ce.returncode == 0 and header.startswith("R,L,H0_truncated"), "divergence table CSV")

    r = subprocess.run([str(exe), "run", str(carleman), "--out", "/proc/forbidden/out"], capture_output=True, text=True)
    expect(r.returncode == 2 and "IoError" in r.stderr, "unwritable output exits 2 naming the path")

sys.exit(1 if failures else 0)
