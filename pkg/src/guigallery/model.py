"""Core domain types shared by every part of the gallery.

Component classes, bounding boxes, app/screenshot/component records and the
corpus consistency check. All types are immutable after construction and safe
to share across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from guigallery.colors import ColorProfile


class ComponentClass(enum.Enum):
    """The 11 component types the gallery indexes, in canonical order."""

    BUTTON = "button"
    IMAGE_BUTTON = "image_button"
    CHECK_BOX = "check_box"
    RADIO_BUTTON = "radio_button"
    SWITCH = "switch"
    TOGGLE_BUTTON = "toggle_button"
    PROGRESS_BAR = "progress_bar"
    RATING_BAR = "rating_bar"
    SEEK_BAR = "seek_bar"
    SPINNER = "spinner"
    CHRONOMETER = "chronometer"

    @classmethod
    def parse(cls, name: str) -> "ComponentClass":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown component class: {name!r}") from None

    @property
    def order(self) -> int:
        return _CLASS_ORDER[self]

    def __str__(self) -> str:
        return self.value


CANONICAL_CLASSES: tuple[ComponentClass, ...] = tuple(ComponentClass)
_CLASS_ORDER = {c: i for i, c in enumerate(CANONICAL_CLASSES)}


class ScreenshotKind(enum.Enum):
    ANNOTATED_RUNTIME = "annotated_runtime"
    APP_INTRODUCTION = "app_introduction"


class ComponentSource(enum.Enum):
    METADATA = "metadata"
    DETECTOR = "detector"


@dataclass(frozen=True)
class BoundingBox:
    """Pixel rectangle: (x, y) is the top-left corner, w/h strictly positive."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self) -> None:
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"non-positive box size {self.w}x{self.h}")
        if self.x < 0 or self.y < 0:
            raise ValueError(f"negative box origin ({self.x}, {self.y})")

    @property
    def x2(self) -> int:
        return self.x + self.w

    @property
    def y2(self) -> int:
        return self.y + self.h

    @property
    def area(self) -> int:
        return self.w * self.h

    def fits_within(self, width: int, height: int) -> bool:
        return self.x2 <= width and self.y2 <= height


@dataclass(frozen=True)
class AppRecord:
    """App-store metadata for one application."""

    app_id: str
    name: str
    category: str
    developer: str
    downloads: int
    rating: float

    def __post_init__(self) -> None:
        if not self.app_id:
            raise ValueError("empty app_id")
        if self.downloads < 0:
            raise ValueError(f"negative downloads for {self.app_id}")
        if not 0.0 <= self.rating <= 5.0:
            raise ValueError(f"rating out of [0, 5] for {self.app_id}: {self.rating}")


def company_key(developer: str) -> str:
    """Company identity: the developer string after trim + case-fold."""
    return developer.strip().casefold()


def normalize_text(text: str) -> str:
    """Trim and collapse internal whitespace; case is preserved for display."""
    return " ".join(text.split())


Annotation = tuple[ComponentClass, BoundingBox]


@dataclass(frozen=True)
class ScreenshotRecord:
    """One screenshot, either dumped at runtime (with ground-truth component
    annotations) or scraped from an app-store introduction page (image only).

    `image` is a path relative to the corpus/store root; pixels are never
    held in the record.
    """

    screenshot_id: str
    app_id: str
    kind: ScreenshotKind
    image: str
    width: int
    height: int
    components: Optional[tuple[Annotation, ...]] = None

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"non-positive image size for {self.screenshot_id}")
        if self.kind is ScreenshotKind.ANNOTATED_RUNTIME:
            if self.components is None:
                object.__setattr__(self, "components", ())
        elif self.components is not None:
            raise ValueError(
                f"introduction screenshot {self.screenshot_id} carries annotations"
            )


@dataclass(frozen=True)
class Detection:
    """One predicted component: class, location and detector confidence."""

    component_class: ComponentClass
    box: BoundingBox
    confidence: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence out of [0, 1]: {self.confidence}")


@dataclass(frozen=True)
class ComponentRecord:
    """One decomposed GUI component with its searchable attributes."""

    component_id: str
    screenshot_id: str
    app_id: str
    component_class: ComponentClass
    box: BoundingBox
    color: ColorProfile
    text: str
    source: ComponentSource
    confidence: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence out of [0, 1]: {self.confidence}")
        if self.source is ComponentSource.METADATA and self.confidence != 1.0:
            raise ValueError(
                f"metadata component {self.component_id} must have confidence 1.0"
            )
        object.__setattr__(self, "text", normalize_text(self.text))


def validate_corpus(
    apps: Sequence[AppRecord], screenshots: Sequence[ScreenshotRecord]
) -> list[str]:
    """Collect every referential-integrity violation in the corpus.

    Violations are data, not failures: an empty list means the corpus is
    consistent. The result is sorted, so it is insensitive to input order.
    """
    violations: list[str] = []

    seen_apps: set[str] = set()
    for app in apps:
        if app.app_id in seen_apps:
            violations.append(f"duplicate app_id {app.app_id!r}")
        seen_apps.add(app.app_id)

    seen_shots: set[str] = set()
    for shot in screenshots:
        if shot.screenshot_id in seen_shots:
            violations.append(f"duplicate screenshot_id {shot.screenshot_id!r}")
        seen_shots.add(shot.screenshot_id)
        if shot.app_id not in seen_apps:
            violations.append(
                f"screenshot {shot.screenshot_id!r} references unknown app_id {shot.app_id!r}"
            )
        for i, (_, box) in enumerate(shot.components or ()):
            if not box.fits_within(shot.width, shot.height):
                violations.append(
                    f"screenshot {shot.screenshot_id!r} annotation {i} box out of image bounds"
                )

    return sorted(violations)
