# -*- coding: utf-8 -*-

import csv
import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stdout
from pathlib import Path
from unittest import mock

import numpy as np

from bin.kcx import NUMERICAL_ERROR, USAGE_ERROR, main
from emit.common import sig12
from kitaev import __version__
from kitaev.complexity import StatePair, total_complexity
from kitaev.derivatives import Which, classify_phase, susceptibility_fd, susceptibility_mu
from kitaev.exc import BoundaryAmbiguous
from kitaev.model import ModelParams, build_grid
from kitaev.optimal_circuit import locality_report
from kitaev.pip2d import Pip2dParams, complexity2d, curvature2d, susceptibility2d
from kitaev.quench import (
    QuenchSetup,
    max_envelope,
    mode_phi_average,
    mode_time_average,
    quench_profile,
    steady_state,
)


def chain(mu, delta=1.0, L=100):
    return ModelParams.short_range(mu, delta, L)


class KcxTests(unittest.TestCase):
    ROOT_DIR = Path(__file__).parent.parent.absolute()

    def setUp(self):
        self.maxDiff = None
        os.chdir(self.ROOT_DIR)
        self.workdir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.workdir.cleanup()

    def output(self, name):
        return os.path.join(self.workdir.name, name)

    def read_csv(self, path):
        with open(path) as f:
            return list(csv.reader(f))

    def read_bytes(self, path):
        with open(path, "rb") as f:
            return f.read()

    def test_gs_matches_library(self):
        path = self.output("gs.csv")
        code = main(["gs", "--mu-r", "0", "--delta", "1", "--L", "100",
                     "--sweep", "mu-t", "0:2:5", "-o", path])
        self.assertEqual(code, 0)
        header, *rows = self.read_csv(path)
        self.assertEqual(header, ["mu_t", "complexity", "density"])
        self.assertEqual(len(rows), 5)
        for row, mu_t in zip(rows, np.linspace(0, 2, 5)):
            report = total_complexity(StatePair(chain(0.0), chain(float(mu_t))))
            self.assertEqual(row, [sig12(float(mu_t)), sig12(report.total), sig12(report.density)])

    def test_stdout(self):
        out = io.StringIO()
        with redirect_stdout(out):
            code = main(["gs", "--L", "100", "--mu-t", "1.5"])
        self.assertEqual(code, 0)
        report = total_complexity(StatePair(chain(0.0), chain(1.5)))
        self.assertEqual(
            out.getvalue(),
            "mu_t,complexity,density\n1.5,%s,%s\n" % (sig12(report.total), sig12(report.density)),
        )

    def test_worker_count_does_not_change_output(self):
        argv = ["susceptibility", "--L", "100", "--sweep", "mu-t", "-2:2:9"]
        outputs = []
        for threads in ("1", "8"):
            path = self.output("sus-%s.csv" % threads)
            with mock.patch.dict(os.environ, {"KC_THREADS": threads}):
                self.assertEqual(main(argv + ["-o", path]), 0)
            outputs.append(self.read_bytes(path))
        self.assertEqual(outputs[0], outputs[1])
        self.assertEqual(len(outputs[0].splitlines()), 10)

    def test_bad_thread_count(self):
        with mock.patch.dict(os.environ, {"KC_THREADS": "zero"}):
            self.assertEqual(main(["gs", "--L", "100", "-o", self.output("x.csv")]), USAGE_ERROR)

    def test_analytic_susceptibility(self):
        path = self.output("sus.json")
        code = main(["susceptibility", "--method", "analytic", "--L", "100",
                     "--mu-t", "0.5", "--format", "json", "-o", path])
        self.assertEqual(code, 0)
        with open(path) as f:
            table = json.load(f)
        self.assertEqual(table["columns"], ["mu_t", "susceptibility", "converged"])
        expected = susceptibility_mu(StatePair(chain(0.0), chain(0.5)))
        self.assertEqual(table["rows"], [[0.5, float(sig12(expected)), 1]])

    def test_gap_closed(self):
        path = self.output("gap.csv")
        mu = -np.cos(build_grid(4).points)[0]
        code = main(["gs", "--L", "4", "--mu-t", repr(float(mu)), "--delta-t", "0", "-o", path])
        self.assertEqual(code, NUMERICAL_ERROR)
        self.assertFalse(os.path.exists(path))

    def test_broken_template(self):
        path = self.output("broken.csv")
        code = main(["gs", "--L", "100", "--template", "tests/templates/broken.csv.j2",
                     "-o", path])
        self.assertEqual(code, USAGE_ERROR)
        self.assertFalse(os.path.exists(path))

    def test_bad_flags(self):
        path = self.output("bad.csv")
        for argv in (
            [],
            ["gs", "--bogus"],
            ["phase-map", "--mu", "-2:2:5"],
            ["gs", "--sweep", "mu-t", "1:0:5"],
            ["gs", "--sweep", "mu-t", "0:1:1"],
            ["gs", "--sweep", "alpha", "0:1:3", "-o", path],
            ["gs", "--L", "7", "-o", path],
            ["gs", "--kind", "long", "-o", path],
            ["quench-steady", "--sweep", "mu-t", "0:1:3", "-o", path],
        ):
            with redirect_stdout(io.StringIO()):
                self.assertEqual(main(argv), USAGE_ERROR, argv)
            self.assertFalse(os.path.exists(path))

    def test_version(self):
        out = io.StringIO()
        with redirect_stdout(out):
            self.assertEqual(main(["--version"]), 0)
        self.assertEqual(out.getvalue().strip(), __version__)

    def test_phase_map(self):
        path = self.output("phase.csv")
        code = main(["phase-map", "--mu", "-2:2:5", "--delta", "0.5:2:4", "--L", "100",
                     "-o", path])
        self.assertEqual(code, 0)
        header, *rows = self.read_csv(path)
        self.assertEqual(header, ["mu", "delta", "winding", "inside_points", "branch_winding"])
        self.assertEqual(len(rows), 20)
        # mu-major order
        self.assertEqual([row[0] for row in rows[:4]], ["-2"] * 4)
        self.assertEqual([row[1] for row in rows[:4]], ["0.5", "1", "1.5", "2"])
        for mu_text, delta_text, winding, inside, branch in rows:
            mu, delta = float(mu_text), float(delta_text)
            if abs(mu) == 1:
                continue
            label = classify_phase(chain(mu, delta))
            self.assertEqual(winding, sig12(label.winding))
            self.assertEqual(inside, "+".join(label.inside_points))
            self.assertEqual(branch, winding)
        center = [row for row in rows if row[:2] == ["0", "1"]]
        self.assertEqual(center, [["0", "1", "1", "z1+z2", "1"]])

    def test_susceptibility_map(self):
        path = self.output("map.csv")
        code = main(["susceptibility-map", "--L", "100", "--mu-t", "0:2:3",
                     "--delta-t", "0.5:1.5:3", "-o", path])
        self.assertEqual(code, 0)
        header, *rows = self.read_csv(path)
        self.assertEqual(header, ["mu_t", "delta_t", "d_mu", "d_delta", "converged"])
        self.assertEqual(len(rows), 9)
        # mu_t-major order
        self.assertEqual([row[0] for row in rows], ["0"] * 3 + ["1"] * 3 + ["2"] * 3)
        self.assertEqual([row[1] for row in rows[:3]], ["0.5", "1", "1.5"])
        for mu_text, delta_text, d_mu, d_delta, converged in rows:
            pair = StatePair(chain(0.0), chain(float(mu_text), float(delta_text)))
            self.assertEqual(d_mu, sig12(susceptibility_fd(pair, Which.MU)))
            self.assertEqual(d_delta, sig12(susceptibility_fd(pair, Which.DELTA)))
            self.assertEqual(converged, "1")

    def test_quench_modes(self):
        path = self.output("modes.csv")
        code = main(["quench-modes", "--L", "100", "--mu-f", "2", "-o", path])
        self.assertEqual(code, 0)
        header, *rows = self.read_csv(path)
        self.assertEqual(
            header, ["k", "delta_theta", "energy", "max_phi", "phi_average", "phi2_average"]
        )
        q = QuenchSetup(chain(0.0), chain(2.0))
        profile = quench_profile(q)
        k = profile.grid.points
        self.assertEqual(len(rows), 50)
        columns = [
            k,
            profile.delta_theta,
            profile.energy,
            max_envelope(q, k),
            mode_phi_average(profile.delta_theta),
            mode_time_average(profile.delta_theta),
        ]
        for i, row in enumerate(rows):
            self.assertEqual(row, [sig12(float(column[i])) for column in columns])

    def test_blank_truncation_order_when_not_achievable(self):
        path = self.output("locality.csv")
        code = main(["fourier", "--L", "100", "--n-max", "64",
                     "--sweep", "mu-t", "0.5:1.5:2", "-o", path])
        self.assertEqual(code, 0)
        header, local, nonlocal_ = self.read_csv(path)
        self.assertEqual(header, ["mu_t", "truncation_order", "tail_law", "tail_constant"])
        self.assertNotEqual(local[1], "")
        self.assertEqual(nonlocal_[1], "")

    def test_quench_series(self):
        path = self.output("series.json")
        code = main(["quench-series", "--L", "100", "--times", "0:10:11", "--format", "json",
                     "-o", path])
        self.assertEqual(code, 0)
        with open(path) as f:
            table = json.load(f)
        self.assertEqual(table["data"]["t"], [float(t) for t in range(11)])
        self.assertEqual(table["data"]["complexity"][0], 0)
        q = QuenchSetup(chain(0.0), chain(2.0))
        self.assertEqual(table["meta"]["steady_state"], float(sig12(steady_state(q))))

    def test_quench_steady(self):
        path = self.output("steady.csv")
        code = main(["quench-steady", "--L", "100", "--sweep", "mu-f", "0:2:3", "-o", path])
        self.assertEqual(code, 0)
        header, *rows = self.read_csv(path)
        self.assertEqual(header, ["mu_f", "steady_state", "max_phi_average"])
        for row, mu_f in zip(rows, (0.0, 1.0, 2.0)):
            self.assertEqual(row[1], sig12(steady_state(QuenchSetup(chain(0.0), chain(mu_f)))))

    def test_fourier(self):
        path = self.output("fourier.json")
        code = main(["fourier", "--L", "100", "--mu-t", "0.5", "--n-max", "64",
                     "--format", "json", "-o", path])
        self.assertEqual(code, 0)
        with open(path) as f:
            table = json.load(f)
        self.assertEqual(table["data"]["n"], list(range(1, 65)))
        report = locality_report(StatePair(chain(0.0), chain(0.5)), 64, 1e-3)
        self.assertEqual(table["meta"]["truncation_order"], report.truncation_order)
        self.assertEqual(table["meta"]["tail_law"], report.tail_law.value)
        self.assertEqual(table["data"]["omega"][0], 0.125)

    def test_pip2d(self):
        path = self.output("pip2d.csv")
        code = main(["pip2d", "--mu-t", "-0.5", "--cutoff", "10", "-o", path])
        self.assertEqual(code, 0)
        header, row = self.read_csv(path)
        self.assertEqual(header, ["mu_t", "density", "susceptibility", "curvature"])
        target = Pip2dParams(-0.5, 1.0, cutoff=10.0)
        expected = [
            complexity2d(Pip2dParams.vacuum_like(target), target),
            susceptibility2d(target),
            curvature2d(target),
        ]
        self.assertEqual(row, ["-0.5"] + [sig12(value) for value in expected])

    def write_jobs(self, text):
        path = self.output("jobs.sweep")
        with open(path, "w") as f:
            f.write(text.replace("@", self.workdir.name))
        return path

    def test_run_jobs(self):
        jobs = self.write_jobs(
            """
            # two figures in one go
            sweep gs {
                L = 100;
                mu-t = 0:2:5;
                output = "@/gs.csv";
            }
            sweep phase-map {
                L = 100;
                mu = -2:2:5;
                delta = 0.5:2:4;
                format = json;
                output = "@/phase.json";
            }
            """
        )
        self.assertEqual(main(["run", jobs]), 0)
        direct = self.output("direct.csv")
        self.assertEqual(main(["gs", "--L", "100", "--sweep", "mu-t", "0:2:5", "-o", direct]), 0)
        self.assertEqual(self.read_bytes(self.output("gs.csv")), self.read_bytes(direct))
        with open(self.output("phase.json")) as f:
            self.assertEqual(len(json.load(f)["rows"]), 20)

    def test_run_susceptibility_map_job(self):
        jobs = self.write_jobs(
            """
            sweep susceptibility-map {
                L = 100;
                mu-t = 0:2:3;
                delta-t = 0.5:1.5:3;
                output = "@/map.csv";
            }
            """
        )
        self.assertEqual(main(["run", jobs]), 0)
        direct = self.output("direct.csv")
        argv = ["susceptibility-map", "--L", "100", "--mu-t", "0:2:3",
                "--delta-t", "0.5:1.5:3", "-o", direct]
        self.assertEqual(main(argv), 0)
        self.assertEqual(self.read_bytes(self.output("map.csv")), self.read_bytes(direct))

    def test_run_stops_at_first_failure(self):
        jobs = self.write_jobs(
            """
            sweep gs { L = 4; mu-t = %r; delta-t = 0; output = "@/gap.csv"; }
            sweep gs { L = 100; output = "@/after.csv"; }
            """ % float(-np.cos(build_grid(4).points)[0])
        )
        self.assertEqual(main(["run", jobs]), NUMERICAL_ERROR)
        self.assertFalse(os.path.exists(self.output("gap.csv")))
        self.assertFalse(os.path.exists(self.output("after.csv")))

    def test_run_rejects_bad_jobs(self):
        nested = self.write_jobs('sweep run { file = "@/jobs.sweep"; }')
        self.assertEqual(main(["run", nested]), USAGE_ERROR)
        unknown = self.write_jobs("sweep gs { bogus = 1; }")
        self.assertEqual(main(["run", unknown]), USAGE_ERROR)
        broken = self.write_jobs("sweep gs { mu-t = 2:0:5; }")
        self.assertEqual(main(["run", broken]), USAGE_ERROR)
        self.assertEqual(main(["run", self.output("missing.sweep")]), USAGE_ERROR)


class BoundaryCellTests(unittest.TestCase):
    def test_critical_cells_are_reported(self):
        out = io.StringIO()
        with redirect_stdout(out):
            code = main(["phase-map", "--mu", "0.5:1.5:3", "--delta", "1:2:2", "--L", "100"])
        self.assertEqual(code, 0)
        rows = [line.split(",") for line in out.getvalue().splitlines()[1:]]
        for row in rows:
            if row[0] != "1":
                continue
            try:
                expected = sig12(classify_phase(chain(1.0, float(row[1]))).winding)
            except BoundaryAmbiguous:
                expected = "nan"
            self.assertEqual(row[2], expected)


if __name__ == "__main__":
    unittest.main()
