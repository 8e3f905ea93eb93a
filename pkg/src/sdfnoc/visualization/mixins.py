import matplotlib.pyplot as plt

from sdfnoc.noc.mesh import InterLink


class NocPlotMixin:
    def plot_noc(self, app=None, show=True, **kwargs):
        """
        Plot the mesh, the placed pack ports and the links switched on.

        Expects ``noc``, ``packed``, ``placement`` and ``routes`` attributes.

        Parameters
        ----------
        app : int or str, optional
            Application whose routes are drawn. None draws the routes of
            every application.
        show : bool
            Call ``plt.show()`` at the end.
        kwargs : dict
            Additional arguments passed to plt.plot for the routed links.
        """
        union = self.packed.union
        apps = union.app_ids if app is None else (union.resolve_app(app),)

        def xy(router):
            return router[1], -router[0]

        for link in self.noc.inter_links:
            (x0, y0), (x1, y1) = xy(link.a), xy(link.b)
            plt.plot([x0, x1], [y0, y1], color="lightgray", linewidth=1, zorder=1)
        xs, ys = zip(*(xy(r) for r in self.noc.routers))
        plt.scatter(xs, ys, marker="s", s=400, color="whitesmoke", edgecolors="gray", zorder=2)

        cmap = plt.get_cmap("tab10")
        for k, a in enumerate(apps):
            offset = 0.06 * (k - (len(apps) - 1) / 2)
            for idx in union.edges_of(a):
                for link in self.routes.get(idx, ()):
                    if not isinstance(link, InterLink):
                        continue
                    (x0, y0), (x1, y1) = xy(link.a), xy(link.b)
                    plt.plot(
                        [x0 + offset, x1 + offset],
                        [y0 + offset, y1 + offset],
                        color=cmap(a % 10),
                        linewidth=2.5,
                        zorder=3,
                        **kwargs,
                    )
            plt.plot([], [], color=cmap(a % 10), label=union.app(a).name)

        for vertex, router in self.placement.items():
            x, y = xy(router)
            plt.annotate(
                f"{self.packed.pack_of(vertex.node).name}\n{vertex}",
                (x, y),
                ha="center",
                va="center",
                fontsize=6,
                zorder=4,
            )
        plt.xlabel("Column")
        plt.ylabel("Row")
        plt.xticks(range(self.noc.cols))
        plt.yticks([-r for r in range(self.noc.rows)], range(self.noc.rows))
        plt.title(f"{self.__class__.__name__} on a {self.noc} mesh NoC")
        plt.legend(loc="best", fontsize=7)
        plt.grid(False)
        if show:
            plt.show()
