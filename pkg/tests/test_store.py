"""Store layout, notebook durability and config parsing."""

import json

import pytest

from guigallery.store import (
    GalleryConfig,
    Notebook,
    Store,
    component_from_row,
    component_to_row,
    load_config,
)

from conftest import make_component


class TestComponentRows:
    def test_round_trip(self):
        rec = make_component("c1", color={"red": 0.75, "blue": 0.25}, text="Buy now")
        row = json.loads(json.dumps(component_to_row(rec)))
        assert component_from_row(row) == rec

    def test_wire_keys(self):
        row = component_to_row(make_component("c1"))
        assert set(row) == {
            "component_id", "screenshot_id", "app_id", "class", "x", "y", "w",
            "h", "color", "text", "source", "confidence",
        }


class TestNotebook:
    def test_add_then_list(self, tmp_path):
        nb = Notebook(tmp_path / "notebook.log")
        entry = nb.add("c1", "nice button")
        assert [e.entry_id for e in nb.entries()] == [entry.entry_id]

    def test_newest_first(self, tmp_path):
        nb = Notebook(tmp_path / "notebook.log")
        first = nb.add("c1", "")
        second = nb.add("c2", "")
        assert [e.entry_id for e in nb.entries()] == [second.entry_id, first.entry_id]

    def test_survives_restart(self, tmp_path):
        path = tmp_path / "notebook.log"
        entry = Notebook(path).add("c1", "keep me")
        reloaded = Notebook(path)
        assert [e.entry_id for e in reloaded.entries()] == [entry.entry_id]
        assert reloaded.entries()[0].note == "keep me"

    def test_delete_is_durable(self, tmp_path):
        path = tmp_path / "notebook.log"
        nb = Notebook(path)
        entry = nb.add("c1", "")
        kept = nb.add("c2", "")
        assert nb.delete(entry.entry_id)
        assert not nb.delete(entry.entry_id)
        assert [e.entry_id for e in Notebook(path).entries()] == [kept.entry_id]

    def test_replay_stable_across_many_restarts(self, tmp_path):
        path = tmp_path / "notebook.log"
        Notebook(path).add("c1", "a")
        states = [tuple(e.entry_id for e in Notebook(path).entries()) for _ in range(3)]
        assert len(set(states)) == 1


class TestConfig:
    def test_missing_file_gives_defaults(self, tmp_path):
        assert load_config(tmp_path / "gallery.conf") == GalleryConfig()

    def test_parses_keys_and_comments(self, tmp_path):
        path = tmp_path / "gallery.conf"
        path.write_text(
            "# thresholds\nmin_confidence = 0.7\nmin_apps = 2\nw_text = 0.4  # heavier text\nw_app = 0.0\n"
        )
        config = load_config(path)
        assert config.min_confidence == 0.7
        assert config.min_apps == 2
        assert config.w_text == 0.4
        assert config.w_app == 0.0

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "gallery.conf"
        path.write_text("mystery = 1\n")
        with pytest.raises(ValueError, match="mystery"):
            load_config(path)

    def test_weights_feed_similarity(self):
        config = GalleryConfig(w_app=0.5, w_developer=0.5, w_class=0.0, w_color=0.0, w_text=0.0)
        weights = config.similarity_weights()
        assert weights.w_app == 0.5


class TestStoreLoad:
    def test_loads_ingested_store(self, demo_store):
        data = Store(demo_store).load()
        assert data.apps and data.screenshots and data.components
        annotated = [s for s in data.screenshots if s.components is not None]
        assert annotated
        assert all((demo_store / s.image).is_file() for s in data.screenshots)

    def test_components_have_thumbnails(self, demo_store):
        store = Store(demo_store)
        data = store.load()
        for rec in data.components[:20]:
            assert store.thumb_path(rec.component_id).is_file()

    def test_detector_components_present(self, demo_store):
        from guigallery.model import ComponentSource

        data = Store(demo_store).load()
        sources = {rec.source for rec in data.components}
        assert sources == {ComponentSource.METADATA, ComponentSource.DETECTOR}

    def test_missing_store_errors(self, tmp_path):
        from guigallery.ingest import CorpusLoadError

        with pytest.raises(CorpusLoadError, match="store"):
            Store(tmp_path / "nope").load()
