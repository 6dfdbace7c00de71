"""Core type invariants and corpus validation."""

import pytest

from guigallery.model import (
    AppRecord,
    BoundingBox,
    CANONICAL_CLASSES,
    ComponentClass,
    ComponentSource,
    ScreenshotKind,
    ScreenshotRecord,
    company_key,
    normalize_text,
    validate_corpus,
)

from conftest import make_app, make_component


class TestComponentClass:
    def test_exactly_eleven_classes(self):
        assert len(CANONICAL_CLASSES) == 11

    def test_canonical_order(self):
        assert [c.value for c in CANONICAL_CLASSES] == [
            "button", "image_button", "check_box", "radio_button", "switch",
            "toggle_button", "progress_bar", "rating_bar", "seek_bar",
            "spinner", "chronometer",
        ]

    def test_parse_round_trips_all_values(self):
        for cls in ComponentClass:
            assert ComponentClass.parse(cls.value) is cls

    @pytest.mark.parametrize("bad", ["text_view", "Button", "", "BUTTON", "btn"])
    def test_parse_rejects_unknown(self, bad):
        with pytest.raises(ValueError, match="unknown component class"):
            ComponentClass.parse(bad)

    def test_order_is_total(self):
        orders = {c.order for c in ComponentClass}
        assert orders == set(range(11))


class TestBoundingBox:
    def test_accessors(self):
        box = BoundingBox(3, 4, 10, 20)
        assert (box.x2, box.y2, box.area) == (13, 24, 200)

    @pytest.mark.parametrize("w,h", [(0, 5), (5, 0), (-1, 5), (5, -2)])
    def test_rejects_non_positive_size(self, w, h):
        with pytest.raises(ValueError, match="non-positive box"):
            BoundingBox(0, 0, w, h)

    def test_rejects_negative_origin(self):
        with pytest.raises(ValueError, match="negative box origin"):
            BoundingBox(-1, 0, 5, 5)

    def test_fits_within(self):
        assert BoundingBox(0, 0, 10, 10).fits_within(10, 10)
        assert not BoundingBox(1, 0, 10, 10).fits_within(10, 10)


class TestAppRecord:
    def test_rejects_negative_downloads(self):
        with pytest.raises(ValueError, match="downloads"):
            make_app("a", downloads=-1)

    @pytest.mark.parametrize("rating", [-0.1, 5.1])
    def test_rejects_rating_out_of_range(self, rating):
        with pytest.raises(ValueError, match="rating"):
            make_app("a", rating=rating)

    def test_company_key_folds_and_trims(self):
        assert company_key("  Acme Studios ") == "acme studios"


class TestScreenshotRecord:
    def test_annotated_gets_empty_annotations(self):
        shot = ScreenshotRecord("s1", "a1", ScreenshotKind.ANNOTATED_RUNTIME, "s1.png", 100, 100)
        assert shot.components == ()

    def test_intro_rejects_annotations(self):
        with pytest.raises(ValueError, match="carries annotations"):
            ScreenshotRecord(
                "s1", "a1", ScreenshotKind.APP_INTRODUCTION, "s1.png", 100, 100,
                components=((ComponentClass.BUTTON, BoundingBox(0, 0, 5, 5)),),
            )


class TestComponentRecord:
    def test_metadata_requires_full_confidence(self):
        with pytest.raises(ValueError, match="confidence 1.0"):
            make_component("c1", source=ComponentSource.METADATA, confidence=0.5)

    def test_detector_confidence_allowed(self):
        rec = make_component("c1", source=ComponentSource.DETECTOR, confidence=0.5)
        assert rec.confidence == 0.5

    def test_text_is_normalized(self):
        rec = make_component("c1", text="  Buy   Now \n")
        assert rec.text == "Buy Now"

    def test_normalize_text(self):
        assert normalize_text(" a \t b\n\nc ") == "a b c"


def _consistent_fixture():
    apps = [make_app("app1"), make_app("app2")]
    shots = [
        ScreenshotRecord("s1", "app1", ScreenshotKind.ANNOTATED_RUNTIME, "s1.png", 100, 100,
                         components=((ComponentClass.BUTTON, BoundingBox(0, 0, 50, 20)),)),
        ScreenshotRecord("s2", "app1", ScreenshotKind.APP_INTRODUCTION, "s2.png", 100, 100),
        ScreenshotRecord("s3", "app2", ScreenshotKind.ANNOTATED_RUNTIME, "s3.png", 100, 100),
    ]
    return apps, shots


class TestValidateCorpus:
    def test_consistent_fixture_is_clean(self):
        apps, shots = _consistent_fixture()
        assert validate_corpus(apps, shots) == []

    def test_unknown_app_reference(self):
        apps, shots = _consistent_fixture()
        ghost = ScreenshotRecord("s9", "ghost", ScreenshotKind.APP_INTRODUCTION, "x.png", 10, 10)
        violations = validate_corpus(apps, shots + [ghost])
        assert len(violations) == 1
        assert "ghost" in violations[0]

    def test_duplicate_ids_reported(self):
        apps, shots = _consistent_fixture()
        violations = validate_corpus(apps + [make_app("app1")], shots + [shots[0]])
        assert any("duplicate app_id" in v for v in violations)
        assert any("duplicate screenshot_id" in v for v in violations)

    def test_out_of_bounds_box_reported(self):
        apps, _ = _consistent_fixture()
        shot = ScreenshotRecord(
            "s1", "app1", ScreenshotKind.ANNOTATED_RUNTIME, "s1.png", 40, 40,
            components=((ComponentClass.BUTTON, BoundingBox(0, 0, 50, 20)),),
        )
        violations = validate_corpus(apps, [shot])
        assert violations and "out of image bounds" in violations[0]

    def test_order_insensitive(self):
        apps, shots = _consistent_fixture()
        ghost = ScreenshotRecord("s9", "ghost", ScreenshotKind.APP_INTRODUCTION, "x.png", 10, 10)
        dup = make_app("app2")
        forward = validate_corpus(apps + [dup], shots + [ghost])
        backward = validate_corpus([dup] + apps[::-1], [ghost] + shots[::-1])
        assert forward == backward

    def test_idempotent(self):
        apps, shots = _consistent_fixture()
        assert validate_corpus(apps, shots) == validate_corpus(apps, shots)
