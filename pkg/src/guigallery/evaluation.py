"""Detection-quality evaluation: IoU, greedy matching at a threshold,
precision/recall and interpolated average precision.

Ground truths and predictions are keyed by screenshot_id. Matching is done
per screenshot and per class: predictions in confidence order greedily claim
the unmatched ground truth with the highest IoU at or above the threshold.
AP uses all-points interpolation (the precision envelope integrated over
recall), with the global prediction ranking ordered by confidence descending,
then screenshot_id, then input position.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from guigallery import kernels
from guigallery.model import Annotation, BoundingBox, ComponentClass, Detection

GroundTruths = Mapping[str, Sequence[Annotation]]
Predictions = Mapping[str, Sequence[Detection]]

DEFAULT_IOU_THRESHOLD = 0.8


def iou(a: BoundingBox, b: BoundingBox) -> float:
    """area(intersection) / area(union); 0 for disjoint boxes."""
    iw = min(a.x2, b.x2) - max(a.x, b.x)
    ih = min(a.y2, b.y2) - max(a.y, b.y)
    inter = iw * ih if (iw > 0 and ih > 0) else 0
    return inter / (a.area + b.area - inter)


@dataclass(frozen=True)
class MatchedPrediction:
    """One prediction after matching: TP when it claimed a ground truth."""

    screenshot_id: str
    index: int  # position within its screenshot's prediction list
    component_class: ComponentClass
    confidence: float
    matched_truth: Optional[int]  # truth index within the screenshot, None = FP

    @property
    def is_tp(self) -> bool:
        return self.matched_truth is not None


@dataclass(frozen=True)
class MatchResult:
    threshold: float
    predictions: tuple[MatchedPrediction, ...]
    truth_counts: Mapping[ComponentClass, int]

    def counts(self, cls: ComponentClass) -> tuple[int, int, int]:
        """(tp, fp, fn) for one class."""
        tp = sum(1 for p in self.predictions if p.component_class is cls and p.is_tp)
        fp = sum(
            1 for p in self.predictions if p.component_class is cls and not p.is_tp
        )
        fn = self.truth_counts.get(cls, 0) - tp
        return tp, fp, fn


def match_detections(
    preds: Predictions, truths: GroundTruths, threshold: float
) -> MatchResult:
    """Greedy per-screenshot, per-class matching at an IoU threshold.

    Each ground truth is claimed at most once; predictions are processed in
    confidence order (ties: earlier input index first) and take the unmatched
    truth of their class with the highest IoU when it reaches the threshold.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold out of (0, 1]: {threshold}")

    truth_counts: dict[ComponentClass, int] = {}
    for anns in truths.values():
        for cls, _ in anns:
            truth_counts[cls] = truth_counts.get(cls, 0) + 1

    matched: list[MatchedPrediction] = []
    for sid in sorted(preds):
        shot_preds = preds[sid]
        shot_truths = list(truths.get(sid, ()))
        overlaps = _iou_matrix(shot_preds, shot_truths)
        claimed: set[int] = set()
        order = sorted(
            range(len(shot_preds)), key=lambda i: (-shot_preds[i].confidence, i)
        )
        for i in order:
            det = shot_preds[i]
            best_ti: Optional[int] = None
            best_iou = 0.0
            for ti, (cls, _) in enumerate(shot_truths):
                if ti in claimed or cls is not det.component_class:
                    continue
                if overlaps[i, ti] > best_iou:
                    best_iou = overlaps[i, ti]
                    best_ti = ti
            if best_ti is not None and best_iou >= threshold:
                claimed.add(best_ti)
                matched.append(
                    MatchedPrediction(sid, i, det.component_class, det.confidence, best_ti)
                )
            else:
                matched.append(
                    MatchedPrediction(sid, i, det.component_class, det.confidence, None)
                )

    matched.sort(key=lambda p: (-p.confidence, p.screenshot_id, p.index))
    return MatchResult(threshold, tuple(matched), truth_counts)


def _iou_matrix(
    shot_preds: Sequence[Detection], shot_truths: Sequence[Annotation]
) -> np.ndarray:
    if not shot_preds or not shot_truths:
        return np.zeros((len(shot_preds), len(shot_truths)))
    pa = np.array([(d.box.x, d.box.y, d.box.w, d.box.h) for d in shot_preds])
    ta = np.array([(b.x, b.y, b.w, b.h) for _, b in shot_truths])
    return kernels.pair_iou(pa, ta)


def average_precision(
    scored: Sequence[tuple[float, bool]], num_truths: int
) -> float:
    """AP from (confidence, is_tp) pairs via the interpolated PR curve.

    The sweep accumulates precision/recall in confidence order; precision at
    each recall is replaced by the maximum precision at any recall >= it and
    the envelope is integrated over recall. 0 when there are no truths.
    """
    if num_truths < 0:
        raise ValueError("negative truth count")
    if num_truths == 0 or not scored:
        return 0.0
    ranked = sorted(range(len(scored)), key=lambda i: (-scored[i][0], i))
    recalls: list[float] = []
    precisions: list[float] = []
    tp = 0
    for seen, i in enumerate(ranked, start=1):
        if scored[i][1]:
            tp += 1
        recalls.append(tp / num_truths)
        precisions.append(tp / seen)

    # Suffix-max precision, then integrate over the recall steps.
    envelope = precisions[:]
    for i in range(len(envelope) - 2, -1, -1):
        envelope[i] = max(envelope[i], envelope[i + 1])
    ap = 0.0
    prev_recall = 0.0
    for r, p in zip(recalls, envelope):
        if r > prev_recall:
            ap += (r - prev_recall) * p
            prev_recall = r
    return ap


@dataclass(frozen=True)
class ClassReport:
    component_class: ComponentClass
    precision: float
    recall: float
    ap: float
    tp: int
    fp: int
    fn: int
    num_truths: int
    num_predictions: int


@dataclass(frozen=True)
class MetricsReport:
    """Per-class and overall detection metrics.

    mAP averages AP over classes present in the ground truth only. Zero
    predictions make precision undefined; it is reported as 0 with the
    zero_predictions flag set.
    """

    iou_threshold: float
    per_class: Mapping[ComponentClass, ClassReport]
    micro_precision: float
    micro_recall: float
    mean_ap: float
    zero_predictions: bool

    def to_dict(self) -> dict:
        return {
            "iou_threshold": self.iou_threshold,
            "per_class": {
                cls.value: {
                    "precision": rep.precision,
                    "recall": rep.recall,
                    "ap": rep.ap,
                    "tp": rep.tp,
                    "fp": rep.fp,
                    "fn": rep.fn,
                    "num_truths": rep.num_truths,
                    "num_predictions": rep.num_predictions,
                }
                for cls, rep in self.per_class.items()
            },
            "micro_precision": self.micro_precision,
            "micro_recall": self.micro_recall,
            "mean_ap": self.mean_ap,
            "zero_predictions": self.zero_predictions,
        }


def evaluate(
    preds: Predictions,
    truths: GroundTruths,
    threshold: float = DEFAULT_IOU_THRESHOLD,
) -> MetricsReport:
    """Match, then report per-class precision/recall/AP plus micro P/R and mAP."""
    result = match_detections(preds, truths, threshold)

    classes = set(result.truth_counts)
    classes.update(p.component_class for p in result.predictions)

    per_class: dict[ComponentClass, ClassReport] = {}
    total_tp = total_fp = total_fn = 0
    for cls in sorted(classes, key=lambda c: c.order):
        tp, fp, fn = result.counts(cls)
        num_truths = result.truth_counts.get(cls, 0)
        scored = [
            (p.confidence, p.is_tp)
            for p in result.predictions
            if p.component_class is cls
        ]
        per_class[cls] = ClassReport(
            component_class=cls,
            precision=tp / (tp + fp) if tp + fp else 0.0,
            recall=tp / (tp + fn) if tp + fn else 0.0,
            ap=average_precision(scored, num_truths),
            tp=tp,
            fp=fp,
            fn=fn,
            num_truths=num_truths,
            num_predictions=len(scored),
        )
        total_tp += tp
        total_fp += fp
        total_fn += fn

    with_truths = [rep.ap for rep in per_class.values() if rep.num_truths > 0]
    return MetricsReport(
        iou_threshold=threshold,
        per_class=per_class,
        micro_precision=total_tp / (total_tp + total_fp) if total_tp + total_fp else 0.0,
        micro_recall=total_tp / (total_tp + total_fn) if total_tp + total_fn else 0.0,
        mean_ap=sum(with_truths) / len(with_truths) if with_truths else 0.0,
        zero_predictions=not any(len(p) for p in preds.values()),
    )
