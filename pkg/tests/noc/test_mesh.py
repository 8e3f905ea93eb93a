"""
test_mesh.py

Unit tests for mesh.py: routers, ports and the link enumeration.
"""

import pytest

from sdfnoc.noc.mesh import (
    InterLink,
    IntraLink,
    MeshNoC,
    RouterPort,
    build_mesh,
    parse_link,
    parse_mesh,
)

E, L, N, S, W = RouterPort.E, RouterPort.L, RouterPort.N, RouterPort.S, RouterPort.W


class TestRouterPort:
    def test_opposite(self):
        assert [p.opposite for p in (N, E, S, W, L)] == [S, W, N, E, L]

    def test_index(self):
        assert [p.index for p in (N, E, S, W, L)] == [0, 1, 2, 3, 4]


class TestLinks:
    def test_intra_link_text(self):
        link = IntraLink((1, 2), W, L)
        assert str(link) == "X(1,2)W>L"
        assert parse_link("X(1,2)W>L") == link

    def test_self_connection(self):
        with pytest.raises(ValueError, match="self connection"):
            IntraLink((0, 0), E, E)

    def test_inter_link_text(self):
        link = InterLink((0, 1), S, (1, 1), N)
        assert str(link) == "I(0,1)S=(1,1)N"
        assert parse_link(str(link)) == link

    def test_between_is_canonical(self):
        assert InterLink.between((0, 1), W, (0, 0)) == InterLink((0, 0), E, (0, 1), W)
        assert InterLink.between((0, 0), E, (0, 1)) == InterLink((0, 0), E, (0, 1), W)

    def test_endpoint(self):
        link = InterLink((0, 0), E, (0, 1), W)
        assert link.endpoint((0, 1)) is W
        with pytest.raises(ValueError, match="not an endpoint"):
            link.endpoint((1, 1))

    @pytest.mark.parametrize(
        "args, reason",
        [
            (((0, 1), W, (0, 0), E), "E or S side"),
            (((0, 0), E, (0, 1), N), "do not face"),
            (((0, 0), E, (0, 2), W), "not neighbors"),
        ],
    )
    def test_invalid_inter_links(self, args, reason):
        with pytest.raises(ValueError, match=reason):
            InterLink(*args)

    @pytest.mark.parametrize("text", ["X(0,0)Q>L", "I(0,0)E(0,1)W", "x(0,0)N>L", ""])
    def test_parse_invalid(self, text):
        with pytest.raises(ValueError, match="invalid link"):
            parse_link(text)


class TestMeshNoC:
    def setup_method(self):
        self.noc = build_mesh(2, 5)

    def test_counts(self):
        assert self.noc.capacity == 10
        assert len(self.noc.inter_links) == 13
        assert len(self.noc.intra_links) == 200
        assert len(self.noc.links) == 213

    @pytest.mark.parametrize("rows, cols", [(1, 1), (1, 4), (3, 3), (4, 2)])
    def test_inter_link_count(self, rows, cols):
        noc = build_mesh(rows, cols)
        assert len(noc.inter_links) == rows * (cols - 1) + cols * (rows - 1)

    def test_neighbors_and_ports(self):
        assert self.noc.neighbor((0, 0), E) == (0, 1)
        assert self.noc.neighbor((0, 0), N) is None
        assert self.noc.neighbor((1, 4), L) is None
        assert self.noc.has_port((0, 0), L)
        assert not self.noc.has_port((1, 4), E)
        assert self.noc.has_port((1, 4), N)

    def test_enumeration_order(self):
        links = self.noc.links
        assert str(links[0]) == "X(0,0)N>E"
        assert str(links[19]) == "X(0,0)L>W"
        assert [str(link) for link in links[20:22]] == ["I(0,0)E=(0,1)W", "I(0,0)S=(1,0)N"]
        shuffled = list(reversed(links))
        assert self.noc.sort_links(shuffled) == list(links)

    def test_transposed(self):
        noc = self.noc.transposed()
        assert (noc.rows, noc.cols) == (5, 2)
        for link in self.noc.links:
            assert link.transposed() in noc.link_index

    def test_invalid_size(self):
        with pytest.raises(ValueError, match=">= 1"):
            MeshNoC(0, 3)


class TestParseMesh:
    def test_parse(self):
        assert parse_mesh("2x5") == (2, 5)

    @pytest.mark.parametrize("text", ["2*5", "x5", "2x", "two"])
    def test_invalid(self, text):
        with pytest.raises(ValueError, match="<rows>x<cols>"):
            parse_mesh(text)
