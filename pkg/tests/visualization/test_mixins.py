import pytest
import matplotlib

matplotlib.use("Agg")  # Use non-GUI backend for tests
import matplotlib.pyplot as plt


class TestNocPlotMixin:
    def test_plot_all_applications(self, experiment_pnr):
        fig = plt.figure()
        experiment_pnr.plot_noc(show=False)
        labels = [t.get_text() for t in plt.gca().get_legend().get_texts()]
        assert labels == ["day", "night"]
        plt.close(fig)

    def test_plot_one_application(self, experiment_pnr):
        fig = plt.figure()
        experiment_pnr.plot_noc(app="night", show=False, alpha=0.8)
        labels = [t.get_text() for t in plt.gca().get_legend().get_texts()]
        assert labels == ["night"]
        plt.close(fig)

    @pytest.mark.filterwarnings("ignore::UserWarning")
    def test_plot_show(self, experiment_pnr):
        fig = plt.figure()
        experiment_pnr.plot_noc(app=1, show=True)
        plt.close(fig)

    def test_plot_unknown_application(self, experiment_pnr):
        with pytest.raises(ValueError, match="unknown application"):
            experiment_pnr.plot_noc(app="dusk", show=False)

    def test_plot_title_includes_class_name(self, experiment_pnr):
        fig = plt.figure()
        experiment_pnr.plot_noc(show=False)
        ax = plt.gca()
        assert "PnrResult" in ax.get_title()
        assert "2x5" in ax.get_title()
        plt.close(fig)

    def test_ports_are_annotated(self, experiment_pnr):
        fig = plt.figure()
        experiment_pnr.plot_noc(show=False)
        texts = [t.get_text() for t in plt.gca().texts]
        assert len(texts) == 10
        assert any(text.startswith("q1\nSINK#1.") for text in texts)
        plt.close(fig)
