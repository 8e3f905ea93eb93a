"""
conftest.py

Shared fixtures: seeded random application graphs and the bundled experiment.
"""

import random
from collections import defaultdict

import pytest

from sdfnoc.data import experiment_path
from sdfnoc.graph.dataflow_graph import DataflowGraph, Edge, Node
from sdfnoc.graph.parser import read_app_graph
from sdfnoc.merge.merger import merge
from sdfnoc.noc.mesh import build_mesh
from sdfnoc.pnr.result import place_and_route

# Type label -> (in, out); every registry type keeps one arity across graphs
TYPES = {"CONST": (0, 1), "ID": (1, 1), "ADDER": (2, 1), "SPLIT": (1, 3)}
SCALAR_TYPES = {"CONST": (0, 1), "ID": (1, 1), "ADDER": (2, 1)}


def make_random_dag(rng, name="g", app_id=1, max_nodes=8, types=TYPES, density=0.7):
    """Acyclic graph whose inputs only load Out ports of earlier nodes."""
    nodes = []
    loads = defaultdict(list)
    for i in range(rng.randint(1, max_nodes)):
        type_label = rng.choice(sorted(types))
        node = Node(f"n{i}", type_label, *types[type_label])
        outs = [v for earlier in nodes for v in earlier.out_vertices()]
        for vertex in node.in_vertices():
            if outs and rng.random() < density:
                loads[rng.choice(outs)].append(vertex)
        nodes.append(node)
    edges = tuple(Edge(driver, tuple(vs)) for driver, vs in sorted(loads.items()))
    return DataflowGraph(name, tuple(nodes), edges, app_id)


def make_random_digraph(rng, max_nodes=8, density=0.6):
    """Graph of ID/ADDER nodes whose inputs may load any Out port, cycles included."""
    types = {"ID": (1, 1), "ADDER": (2, 1)}
    nodes = []
    for i in range(rng.randint(1, max_nodes)):
        type_label = rng.choice(sorted(types))
        nodes.append(Node(f"n{i}", type_label, *types[type_label]))
    outs = [v for node in nodes for v in node.out_vertices()]
    loads = defaultdict(list)
    for node in nodes:
        for vertex in node.in_vertices():
            if rng.random() < density:
                loads[rng.choice(outs)].append(vertex)
    edges = tuple(Edge(driver, tuple(vs)) for driver, vs in sorted(loads.items()))
    return DataflowGraph("c", tuple(nodes), edges)


def make_random_graph_set(rng, max_apps=4, max_nodes=8, types=TYPES):
    return [
        make_random_dag(rng, f"app{i}", i, max_nodes, types)
        for i in range(1, rng.randint(1, max_apps) + 1)
    ]


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def random_dag():
    return make_random_dag


@pytest.fixture
def random_digraph():
    return make_random_digraph


@pytest.fixture
def random_graph_set():
    return make_random_graph_set


@pytest.fixture
def experiment():
    """Path of a bundled experiment file by name."""
    return experiment_path


@pytest.fixture(scope="session")
def experiment_pnr():
    """Day/night experiment placed and routed on the 2x5 mesh."""
    graphs = [read_app_graph(experiment_path(f"{name}.sdf")) for name in ("day", "night")]
    _, packed = merge(graphs)
    return place_and_route(packed, build_mesh(2, 5), seed=0)
