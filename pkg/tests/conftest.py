"""Shared fixture builders."""

from __future__ import annotations

import numpy as np
import pytest

from guigallery.colors import ColorName, ColorProfile
from guigallery.model import (
    AppRecord,
    BoundingBox,
    ComponentClass,
    ComponentRecord,
    ComponentSource,
)

WORD_POOL = [
    "login", "sign", "up", "submit", "cancel", "ok", "next", "back", "play",
    "buy", "now", "search", "settings", "share", "like", "follow", "cart",
]

CATEGORY_POOL = ["social", "finance", "games", "productivity", "travel", "health"]
DEVELOPER_POOL = [
    "acme studios", "bluefin labs", "cedar mobile", "driftwave", "emberworks",
    "futura apps", "gradient soft", "harborlight", "ionflow", "juniper apps",
]


def make_profile(fractions: dict[str, float]) -> ColorProfile:
    histogram = {ColorName.parse(name): frac for name, frac in fractions.items()}
    primary = max(histogram, key=lambda n: (histogram[n], -n.order))
    return ColorProfile(primary=primary, histogram=histogram)


def make_component(
    component_id: str,
    app_id: str = "app1",
    screenshot_id: str | None = None,
    cls: ComponentClass = ComponentClass.BUTTON,
    box: BoundingBox = BoundingBox(10, 10, 40, 20),
    color: dict[str, float] | None = None,
    text: str = "",
    source: ComponentSource = ComponentSource.METADATA,
    confidence: float = 1.0,
) -> ComponentRecord:
    return ComponentRecord(
        component_id=component_id,
        screenshot_id=screenshot_id or f"{app_id}-s1",
        app_id=app_id,
        component_class=cls,
        box=box,
        color=make_profile(color or {"red": 1.0}),
        text=text,
        source=source,
        confidence=confidence,
    )


def make_app(
    app_id: str,
    category: str = "games",
    developer: str = "acme studios",
    downloads: int = 1000,
    rating: float = 4.0,
    name: str | None = None,
) -> AppRecord:
    return AppRecord(
        app_id=app_id,
        name=name or app_id.title(),
        category=category,
        developer=developer,
        downloads=downloads,
        rating=rating,
    )


def random_corpus(n_components: int, seed: int = 11, n_apps: int = 30):
    """In-memory random corpus for index/demographics oracle checks."""
    rng = np.random.default_rng(seed)
    apps = [
        make_app(
            f"app{i:03d}",
            category=CATEGORY_POOL[int(rng.integers(len(CATEGORY_POOL)))],
            developer=DEVELOPER_POOL[int(rng.integers(len(DEVELOPER_POOL)))],
            downloads=int(rng.integers(0, 10_000_000)),
            rating=round(float(rng.uniform(0, 5)), 1),
        )
        for i in range(n_apps)
    ]
    color_values = [c.value for c in ColorName]
    components = []
    for i in range(n_components):
        app = apps[int(rng.integers(n_apps))]
        names = rng.choice(color_values, size=int(rng.integers(1, 4)), replace=False)
        weights = rng.random(len(names)) + 0.05
        weights /= weights.sum()
        color = {str(n): float(w) for n, w in zip(names, weights)}
        n_words = int(rng.integers(0, 4))
        text = " ".join(
            WORD_POOL[int(rng.integers(len(WORD_POOL)))] for _ in range(n_words)
        )
        components.append(
            make_component(
                f"c{i:05d}",
                app_id=app.app_id,
                screenshot_id=f"{app.app_id}-s{int(rng.integers(4))}",
                cls=list(ComponentClass)[int(rng.integers(len(ComponentClass)))],
                box=BoundingBox(
                    int(rng.integers(0, 500)),
                    int(rng.integers(0, 500)),
                    int(rng.integers(1, 200)),
                    int(rng.integers(1, 200)),
                ),
                color=color,
                text=text,
            )
        )
    return components, apps


@pytest.fixture(scope="session")
def demo_store(tmp_path_factory):
    """A small ingested + decomposed store shared by service/CLI tests."""
    from click.testing import CliRunner

    from guigallery.cli import main
    from guigallery.synth import generate_corpus

    base = tmp_path_factory.mktemp("demo")
    corpus = base / "corpus"
    store = base / "store"
    generate_corpus(corpus / "annotated", corpus / "intro", apps=6, shots_per_app=2,
                    intro_per_app=1, seed=13)
    runner = CliRunner()
    result = runner.invoke(
        main,
        ["ingest", "--annotated", str(corpus / "annotated"),
         "--intro", str(corpus / "intro"), "--out", str(store)],
        catch_exceptions=False,
    )
    assert result.exit_code == 0, result.output
    result = runner.invoke(main, ["decompose", "--store", str(store)], catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return store


@pytest.fixture
def small_corpus():
    """Three buttons: two red, one blue, across two apps."""
    apps = [
        make_app("app1", category="games", developer="acme studios", downloads=500),
        make_app("app2", category="social", developer="bluefin labs", downloads=900),
    ]
    components = [
        make_component("b1", app_id="app1", color={"red": 1.0}, text="Login"),
        make_component("b2", app_id="app2", color={"red": 1.0}, text="LOG IN"),
        make_component("b3", app_id="app2", color={"blue": 1.0}, text="signup"),
    ]
    return components, apps
