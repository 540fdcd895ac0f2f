"""Acceptance gate: every verification criterion at its stated tolerance.

Criteria 1-12 run through the same check registry the `verify` command
uses, against the default configuration; criterion 13 exercises the CLI
contract itself through subprocesses.  One pass/fail line is printed per
criterion.
"""

import json
import subprocess
import sys

import pytest

from macroball.checks import REGISTRY, run_checks
from macroball.config import load_config

CRITERION_IDS = [
    "closed_form_volume_oracles",       # 1
    "f_large_r_limit",                  # 2
    "f_small_r_law",                    # 3
    "chain_halfball_inequality",        # 4
    "two_lambda_bound",                 # 5
    "fd_derivative_certification",      # 6
    "c_n_floor",                        # 7
    "lambda_n_law",                     # 8
    "pipeline_identities",              # 9
    "ideal_simplex_values",             # 10
    "surface_consistency",              # 11
    "optimizer_oracle_equivalence",     # 12
]


@pytest.fixture(scope="module")
def outcome():
    return run_checks(load_config(None), suite="all")


@pytest.fixture(scope="module")
def by_id(outcome):
    return {c.id: c for c in outcome.checks}


def _report(k: int, check) -> None:
    line = (f"[{check.status.upper():4s}] criterion {k:2d}: {check.id} "
            f"(margin {check.margin:.3e})")
    print(line)


@pytest.mark.parametrize("k", range(1, 13))
def test_criterion(k, by_id):
    check = by_id[CRITERION_IDS[k - 1]]
    _report(k, check)
    assert check.status == "pass", (
        f"criterion {k} ({check.id}) failed: lhs={check.lhs!r} rhs={check.rhs!r} "
        f"margin={check.margin!r}")


def test_registry_covers_all_criteria(outcome):
    assert [c.id for c in outcome.checks] == CRITERION_IDS
    assert len(REGISTRY) == 12


class TestCriterion13CliContract:
    """verify exits 0 with byte-identical reports; missing externals exit 2."""

    def test_verify_deterministic_and_green(self, tmp_path):
        cmd = [sys.executable, "-m", "macroball", "verify"]
        outs = []
        for name in ("first.json", "second.json"):
            path = tmp_path / name
            res = subprocess.run(cmd + ["--out", str(path)],
                                 capture_output=True, text=True)
            assert res.returncode == 0, res.stderr
            outs.append(path.read_bytes())
        identical = outs[0] == outs[1]
        doc = json.loads(outs[0])
        ok = res.returncode == 0 and identical and doc["summary"]["fail"] == 0
        print(f"[{'PASS' if ok else 'FAIL'}] criterion 13: cli_contract "
              f"(exit 0, byte-identical reports, {doc['summary']['pass']} checks green)")
        assert identical
        assert doc["summary"]["fail"] == 0

    def test_constants_dim4_exits_2(self):
        res = subprocess.run(
            [sys.executable, "-m", "macroball", "constants", "--dim", "4"],
            capture_output=True, text=True)
        assert res.returncode == 2
        assert "ideal_simplex_vol_override[4]" in res.stderr
