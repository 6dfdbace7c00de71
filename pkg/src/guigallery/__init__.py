"""GUI component design gallery: corpus ingestion, faceted search,
design demographics, company comparison and detection evaluation."""

from guigallery.colors import (
    ColorName,
    ColorProfile,
    ColorThresholds,
    Hsv,
    color_name,
    dominant_color,
    hsv_to_rgb,
    rgb_to_hsv,
)
from guigallery.model import (
    AppRecord,
    BoundingBox,
    ComponentClass,
    ComponentRecord,
    ComponentSource,
    Detection,
    ScreenshotKind,
    ScreenshotRecord,
    validate_corpus,
)
from guigallery.evaluation import evaluate, iou, match_detections, average_precision
from guigallery.index import QuerySpec, ResultPage, SimilarityWeights, build_index

__version__ = "0.1.0"

__all__ = [
    "AppRecord",
    "BoundingBox",
    "ColorName",
    "ColorProfile",
    "ColorThresholds",
    "ComponentClass",
    "ComponentRecord",
    "ComponentSource",
    "Detection",
    "Hsv",
    "QuerySpec",
    "ResultPage",
    "ScreenshotKind",
    "ScreenshotRecord",
    "SimilarityWeights",
    "average_precision",
    "build_index",
    "color_name",
    "dominant_color",
    "evaluate",
    "hsv_to_rgb",
    "iou",
    "match_detections",
    "rgb_to_hsv",
    "validate_corpus",
]
