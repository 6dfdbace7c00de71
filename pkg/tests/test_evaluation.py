"""IoU, matching, AP and the full metrics report."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from guigallery.evaluation import (
    average_precision,
    evaluate,
    iou,
    match_detections,
)
from guigallery.model import BoundingBox, ComponentClass, Detection

from oracles import brute_force_evaluate, rasterized_iou

BTN = ComponentClass.BUTTON
CHK = ComponentClass.CHECK_BOX

boxes = st.builds(
    BoundingBox,
    st.integers(0, 60), st.integers(0, 60), st.integers(1, 40), st.integers(1, 40),
)


class TestIou:
    def test_identity(self):
        box = BoundingBox(3, 7, 20, 10)
        assert iou(box, box) == 1.0

    def test_disjoint(self):
        assert iou(BoundingBox(0, 0, 10, 10), BoundingBox(50, 50, 10, 10)) == 0.0

    def test_half_shift(self):
        # intersection 50, union 150
        value = iou(BoundingBox(0, 0, 10, 10), BoundingBox(5, 0, 10, 10))
        assert value == pytest.approx(50 / 150, abs=1e-12)

    @given(boxes, boxes)
    def test_symmetry(self, a, b):
        assert iou(a, b) == iou(b, a)

    @given(boxes, boxes, st.integers(2, 5))
    def test_scale_invariance(self, a, b, k):
        scaled_a = BoundingBox(a.x * k, a.y * k, a.w * k, a.h * k)
        scaled_b = BoundingBox(b.x * k, b.y * k, b.w * k, b.h * k)
        assert iou(scaled_a, scaled_b) == pytest.approx(iou(a, b), abs=1e-12)

    @given(boxes, boxes)
    def test_matches_rasterized_oracle(self, a, b):
        assert iou(a, b) == pytest.approx(rasterized_iou(a, b), abs=1e-9)


def _det(box, conf, cls=BTN):
    return Detection(cls, box, conf)


class TestMatchDetections:
    def test_perfect_detections(self):
        truths = {"s1": [(BTN, BoundingBox(0, 0, 10, 10)), (CHK, BoundingBox(30, 30, 8, 8))]}
        preds = {"s1": [_det(BoundingBox(0, 0, 10, 10), 0.9),
                        _det(BoundingBox(30, 30, 8, 8), 0.8, CHK)]}
        result = match_detections(preds, truths, 0.8)
        assert result.counts(BTN) == (1, 0, 0)
        assert result.counts(CHK) == (1, 0, 0)

    def test_strict_threshold(self):
        # iou exactly 0.79 < 0.8: box of area 100 vs contained strip of area 79
        truths = {"s1": [(BTN, BoundingBox(0, 0, 10, 10))]}
        preds = {"s1": [_det(BoundingBox(0, 0, 79, 1), 0.9)]}
        assert iou(BoundingBox(0, 0, 10, 10), BoundingBox(0, 0, 79, 1)) < 0.8
        result = match_detections(preds, truths, 0.8)
        assert result.counts(BTN) == (0, 1, 1)

    def test_one_truth_one_match(self):
        truth_box = BoundingBox(0, 0, 10, 10)
        truths = {"s1": [(BTN, truth_box)]}
        preds = {"s1": [_det(truth_box, 0.6), _det(truth_box, 0.9)]}
        result = match_detections(preds, truths, 0.8)
        assert result.counts(BTN) == (1, 1, 0)
        by_index = {p.index: p for p in result.predictions}
        assert by_index[1].is_tp  # higher confidence wins the only truth
        assert not by_index[0].is_tp

    def test_class_must_match(self):
        truths = {"s1": [(CHK, BoundingBox(0, 0, 10, 10))]}
        preds = {"s1": [_det(BoundingBox(0, 0, 10, 10), 0.9, BTN)]}
        result = match_detections(preds, truths, 0.8)
        assert result.counts(BTN) == (0, 1, 0)
        assert result.counts(CHK) == (0, 0, 1)

    def test_threshold_out_of_range(self):
        with pytest.raises(ValueError, match="threshold"):
            match_detections({}, {}, 0.0)

    @given(st.data())
    def test_count_conservation(self, data):
        rng_boxes = data.draw(st.lists(boxes, max_size=8))
        truth_boxes = data.draw(st.lists(boxes, max_size=8))
        preds = {"s": [_det(b, data.draw(st.floats(0, 1)), BTN) for b in rng_boxes]}
        truths = {"s": [(BTN, b) for b in truth_boxes]}
        result = match_detections(preds, truths, 0.8)
        tp, fp, fn = result.counts(BTN)
        assert tp + fp == len(rng_boxes)
        assert tp + fn == len(truth_boxes)


class TestAveragePrecision:
    def test_all_tp(self):
        assert average_precision([(0.9, True), (0.8, True)], 2) == 1.0

    def test_spec_example(self):
        # [TP, FP, TP] with 2 truths: PR points (0.5,1), (0.5,0.5), (1,2/3)
        scored = [(0.9, True), (0.8, False), (0.7, True)]
        assert average_precision(scored, 2) == pytest.approx(
            1.0 * 0.5 + (2 / 3) * 0.5
        )

    def test_no_predictions(self):
        assert average_precision([], 5) == 0.0

    def test_no_truths(self):
        assert average_precision([(0.9, False)], 0) == 0.0

    @given(st.lists(st.tuples(st.floats(0, 1), st.booleans()), max_size=20))
    def test_appending_low_fp_never_increases(self, scored):
        num_truths = max(1, sum(1 for _, tp in scored if tp))
        base = average_precision(scored, num_truths)
        worse = average_precision(scored + [(-0.1 + 0.0, False)], num_truths)
        assert worse <= base + 1e-12

    @given(st.lists(st.tuples(st.floats(0, 1), st.booleans()), min_size=1, max_size=20))
    def test_promoting_fp_never_decreases(self, scored):
        fps = [i for i, (_, tp) in enumerate(scored) if not tp]
        num_truths = sum(1 for _, tp in scored if tp) + 1
        base = average_precision(scored, num_truths)
        if not fps:
            return
        promoted = list(scored)
        promoted[fps[0]] = (promoted[fps[0]][0], True)
        assert average_precision(promoted, num_truths) >= base - 1e-12


def _random_fixture(rng, n_shots=4, max_boxes=12):
    classes = list(ComponentClass)
    truths, preds = {}, {}
    for s in range(n_shots):
        sid = f"s{s}"
        truths[sid] = []
        preds[sid] = []
        for _ in range(int(rng.integers(0, max_boxes))):
            cls = classes[int(rng.integers(len(classes)))]
            box = BoundingBox(
                int(rng.integers(0, 80)), int(rng.integers(0, 80)),
                int(rng.integers(1, 40)), int(rng.integers(1, 40)),
            )
            truths[sid].append((cls, box))
            if rng.random() < 0.7:  # jittered or exact prediction
                if rng.random() < 0.5:
                    pred_box = box
                else:
                    pred_box = BoundingBox(
                        box.x + int(rng.integers(0, 3)), box.y + int(rng.integers(0, 3)),
                        max(1, box.w + int(rng.integers(-2, 3))),
                        max(1, box.h + int(rng.integers(-2, 3))),
                    )
                preds[sid].append(
                    Detection(cls, pred_box, round(float(rng.uniform(0.05, 1.0)), 3))
                )
        for _ in range(int(rng.integers(0, 4))):  # spurious predictions
            preds[sid].append(
                Detection(
                    classes[int(rng.integers(len(classes)))],
                    BoundingBox(int(rng.integers(100, 150)), int(rng.integers(100, 150)),
                                int(rng.integers(1, 20)), int(rng.integers(1, 20))),
                    round(float(rng.uniform(0.05, 1.0)), 3),
                )
            )
    return preds, truths


class TestEvaluate:
    def test_perfect_report(self):
        truths = {"s1": [(BTN, BoundingBox(0, 0, 10, 10)), (CHK, BoundingBox(30, 30, 8, 8))]}
        preds = {
            "s1": [_det(BoundingBox(0, 0, 10, 10), 1.0),
                   _det(BoundingBox(30, 30, 8, 8), 1.0, CHK)]
        }
        report = evaluate(preds, truths, 0.8)
        assert report.micro_precision == 1.0
        assert report.micro_recall == 1.0
        assert report.mean_ap == 1.0
        assert not report.zero_predictions

    def test_empty_predictions(self):
        truths = {"s1": [(BTN, BoundingBox(0, 0, 10, 10))]}
        report = evaluate({"s1": []}, truths, 0.8)
        assert report.zero_predictions
        assert report.micro_precision == 0.0
        assert report.micro_recall == 0.0

    def test_default_threshold(self):
        report = evaluate({}, {})
        assert report.iou_threshold == 0.8

    def test_map_skips_truthless_classes(self):
        truths = {"s1": [(BTN, BoundingBox(0, 0, 10, 10))]}
        preds = {"s1": [_det(BoundingBox(0, 0, 10, 10), 1.0),
                        _det(BoundingBox(40, 40, 5, 5), 0.9, CHK)]}
        report = evaluate(preds, truths, 0.8)
        assert report.per_class[CHK].ap == 0.0
        assert report.mean_ap == 1.0  # only the button class has truths

    @pytest.mark.parametrize("seed", [11, 22, 33, 44])
    def test_matches_brute_force_oracle(self, seed):
        rng = np.random.default_rng(seed)
        preds, truths = _random_fixture(rng)
        report = evaluate(preds, truths, 0.8)
        expected = brute_force_evaluate(preds, truths, 0.8)
        overall = expected.pop("_overall")
        assert report.micro_precision == pytest.approx(overall["micro_precision"], abs=1e-12)
        assert report.micro_recall == pytest.approx(overall["micro_recall"], abs=1e-12)
        assert report.mean_ap == pytest.approx(overall["mean_ap"], abs=1e-12)
        for cls_value, exp in expected.items():
            rep = report.per_class[ComponentClass.parse(cls_value)]
            assert (rep.tp, rep.fp, rep.fn) == (exp["tp"], exp["fp"], exp["fn"])
            assert rep.ap == pytest.approx(exp["ap"], abs=1e-12)

    def test_report_serializes(self):
        truths = {"s1": [(BTN, BoundingBox(0, 0, 10, 10))]}
        preds = {"s1": [_det(BoundingBox(0, 0, 10, 10), 1.0)]}
        payload = evaluate(preds, truths, 0.8).to_dict()
        assert payload["per_class"]["button"]["tp"] == 1
        assert payload["iou_threshold"] == 0.8
