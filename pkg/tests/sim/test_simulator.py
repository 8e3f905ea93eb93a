"""
test_simulator.py

Unit tests for simulator.py: outputs on the NoC match direct evaluation for
any link delays, and reconfiguration between applications leaves no state
behind.
"""

import math
import random

import pytest

from sdfnoc.exceptions import UnconfiguredPortError, UnroutableError
from sdfnoc.graph.dataflow_graph import Vertex
from sdfnoc.graph.evaluate import evaluate
from sdfnoc.graph.tokens import NULL
from sdfnoc.imaging.registry import default_registry
from sdfnoc.merge.merger import merge
from sdfnoc.noc.config import CrossbarConfig
from sdfnoc.noc.mesh import build_mesh
from sdfnoc.pnr.placement import AnnealingSchedule
from sdfnoc.pnr.result import place_and_route
from sdfnoc.sim.delays import DelayModel
from sdfnoc.sim.simulator import Segment, reconfigure_and_run, simulate
from sdfnoc.sim.streams import read_streams

FAST = AnnealingSchedule(attempted_per_step=50, stop_temperature=0.5)
SCALAR_TYPES = {"CONST": (0, 1), "ID": (1, 1), "ADDER": (2, 1)}


def run(result, registry, app, inputs, delays=None, config=None, length=None):
    cfg = result.configs[app] if config is None else config
    return simulate(
        result.noc,
        cfg,
        result.packed,
        result.placement,
        result.routes,
        registry,
        inputs,
        delays,
        app,
        length=length,
    )


class TestExperimentSimulation:
    def setup_method(self):
        self.registry = default_registry()

    def inputs(self, experiment, name):
        return read_streams(experiment(f"{name}_inputs.txt"))

    @pytest.mark.parametrize("app, name", [(1, "day"), (2, "night")])
    def test_matches_evaluation_for_any_delays(self, experiment_pnr, experiment, app, name):
        inputs = self.inputs(experiment, name)
        graph = experiment_pnr.packed.union.app(app)
        expected = evaluate(graph, inputs, self.registry)
        rng = random.Random(app)
        for _ in range(50):
            delays = DelayModel(seed=rng.randrange(10**6), max_delay=rng.randint(0, 16))
            result = run(experiment_pnr, self.registry, app, inputs, delays)
            assert result.outputs == expected

    def test_null_token_passes_through(self, experiment_pnr, experiment):
        result = run(experiment_pnr, self.registry, 1, self.inputs(experiment, "day"))
        (stream,) = result.outputs.values()
        assert stream[1] is NULL
        assert stream[0] == stream[2]

    def test_every_route_link_carries_every_token(self, experiment_pnr, experiment):
        result = run(experiment_pnr, self.registry, 2, self.inputs(experiment, "night"))
        used = {link for idx in (0, 2, 4, 5) for link in experiment_pnr.routes[idx]}
        assert set(result.occupancy) == used
        assert set(result.link_occupancy()) == {3}
        assert result.link_occupancy().name == "tokens"

    def test_trace(self, experiment_pnr, experiment):
        delays = DelayModel(seed=2, max_delay=5)
        result = run(experiment_pnr, self.registry, 1, self.inputs(experiment, "day"), delays)
        ticks = [int(line.split()[0].removeprefix("tick=")) for line in result.trace]
        assert ticks == sorted(ticks)
        assert len(result.trace) == sum(result.occupancy.values())
        assert all(" token#" in line and " link=" in line for line in result.trace)
        assert result.ticks >= ticks[-1]

    def test_missing_connections(self, experiment_pnr, experiment):
        night = self.inputs(experiment, "night")
        day = self.inputs(experiment, "day")
        with pytest.raises(UnconfiguredPortError):
            run(experiment_pnr, self.registry, 2, night, config=experiment_pnr.configs[1])
        with pytest.raises(UnconfiguredPortError, match="not connected"):
            run(experiment_pnr, self.registry, 1, day, config=CrossbarConfig())

    def test_missing_input_stream(self, experiment_pnr):
        with pytest.raises(ValueError, match="missing input streams"):
            run(experiment_pnr, self.registry, 1, {})


class TestReconfiguration:
    def test_sequence_matches_standalone_runs(self, experiment_pnr, experiment):
        registry = default_registry()
        day = read_streams(experiment("day_inputs.txt"))
        night = read_streams(experiment("night_inputs.txt"))
        delays = DelayModel(seed=11, max_delay=7)
        scenario = [
            Segment("day", day, delays),
            Segment("night", night, delays),
            Segment(1, day, delays),
        ]
        results = reconfigure_and_run(experiment_pnr, registry, scenario)
        assert [r.app for r in results] == [1, 2, 1]
        standalone_day = run(experiment_pnr, registry, 1, day, delays)
        standalone_night = run(experiment_pnr, registry, 2, night, delays)
        assert results[0].outputs == standalone_day.outputs
        assert results[1].outputs == standalone_night.outputs
        assert results[2].outputs == standalone_day.outputs
        assert results[2].ticks == standalone_day.ticks

    def test_unknown_application(self, experiment_pnr):
        with pytest.raises(ValueError, match="valid applications"):
            reconfigure_and_run(experiment_pnr, default_registry(), [Segment("dusk", {})])


class TestRandomGraphs:
    @pytest.mark.slow
    def test_matches_evaluation(self, random_graph_set):
        rng = random.Random(77)
        registry = default_registry()
        routed = simulated = 0
        for _ in range(500):
            graphs = random_graph_set(rng, max_apps=3, max_nodes=6, types=SCALAR_TYPES)
            _, packed = merge(graphs)
            side = math.isqrt(max(len(packed.placeable_vertices()) - 1, 0)) + 3
            try:
                result = place_and_route(packed, build_mesh(side, side), schedule=FAST)
            except UnroutableError:
                continue
            routed += 1
            for app in result.packed.union.app_ids:
                graph = result.packed.union.app(app)
                length = rng.randint(0, 4)
                inputs = {
                    vertex: [rng.choice([None, *range(50)]) for _ in range(length)]
                    for vertex in graph.input_vertices()
                }
                expected = evaluate(graph, inputs, registry, length=length)
                delays = DelayModel(seed=rng.randrange(1000), max_delay=rng.randint(0, 16))
                got = run(result, registry, app, inputs, delays, length=length)
                assert got.outputs == expected
                simulated += 1
        assert routed >= 490
        assert simulated >= routed

    def test_outputs_keyed_by_application_vertices(self, experiment_pnr, experiment):
        result = run(
            experiment_pnr,
            default_registry(),
            2,
            read_streams(experiment("night_inputs.txt")),
        )
        assert list(result.outputs) == [Vertex.parse("sink.out0")]
