"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line. Run with `pytest tests/test_acceptance.py -s`.

Criteria are property-based plus small reproducible measurements; corpus-
scale numbers from large private datasets are out of scope by design.
"""

from __future__ import annotations

import dataclasses
import json
import socket
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from guigallery import evaluation
from guigallery.colors import ColorName, Hsv, hsv_to_rgb, rgb_to_hsv, color_name
from guigallery.comparison import compare, eligible_companies
from guigallery.decompose import (
    AugmentParams,
    augment_screenshot,
    stub_detector,
)
from guigallery.demographics import compute_demographics
from guigallery.evaluation import evaluate, iou
from guigallery.index import QuerySpec, build_index
from guigallery.model import BoundingBox, ComponentClass, company_key

from conftest import make_app, make_component, random_corpus
from oracles import (
    brute_force_evaluate,
    linear_scan_query,
    naive_augment_canvas,
    rasterized_iou,
)
from test_index import _random_queries


@contextmanager
def criterion(name: str, budget_seconds: float):
    started = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    elapsed = time.monotonic() - started
    assert elapsed < budget_seconds, f"{name} took {elapsed:.1f}s (budget {budget_seconds}s)"
    print(f"[PASS] {name} ({elapsed:.2f}s)")


# 16 canonical colors with analytically forced conversions (hexcone formula).
CANONICAL_TABLE = [
    ((255, 0, 0), Hsv(0.0, 1.0, 1.0), ColorName.RED),
    ((0, 255, 0), Hsv(120.0, 1.0, 1.0), ColorName.GREEN),
    ((0, 0, 255), Hsv(240.0, 1.0, 1.0), ColorName.BLUE),
    ((0, 255, 255), Hsv(180.0, 1.0, 1.0), ColorName.CYAN),
    ((255, 0, 255), Hsv(300.0, 1.0, 1.0), ColorName.MAGENTA),
    ((255, 255, 0), Hsv(60.0, 1.0, 1.0), ColorName.YELLOW),
    ((0, 0, 0), Hsv(0.0, 0.0, 0.0), ColorName.BLACK),
    ((255, 255, 255), Hsv(0.0, 0.0, 1.0), ColorName.WHITE),
    ((128, 128, 128), Hsv(0.0, 0.0, 128 / 255), ColorName.GRAY),
    ((64, 64, 64), Hsv(0.0, 0.0, 64 / 255), ColorName.GRAY),
    ((255, 128, 0), Hsv(60.0 * 128 / 255, 1.0, 1.0), ColorName.ORANGE),
    ((128, 255, 0), Hsv(60.0 * (0 - 128) / 255 + 120.0, 1.0, 1.0), ColorName.CHARTREUSE),
    ((0, 255, 128), Hsv(60.0 * 128 / 255 + 120.0, 1.0, 1.0), ColorName.SPRING_GREEN),
    ((0, 128, 255), Hsv(60.0 * (0 - 128) / 255 + 240.0, 1.0, 1.0), ColorName.AZURE),
    ((128, 0, 255), Hsv(60.0 * 128 / 255 + 240.0, 1.0, 1.0), ColorName.VIOLET),
    ((255, 0, 128), Hsv((60.0 * (0 - 128) / 255) % 360.0, 1.0, 1.0), ColorName.ROSE),
]


def test_color_suite():
    with criterion("color-suite", budget_seconds=5.0):
        for rgb, expected_hsv, expected_name in CANONICAL_TABLE:
            got = rgb_to_hsv(*rgb)
            assert got == expected_hsv, (rgb, got, expected_hsv)
            assert color_name(got) is expected_name, (rgb, expected_name)

        rng = np.random.default_rng(0xC0105)
        for _ in range(10_000):
            r, g, b = (int(v) for v in rng.integers(0, 256, 3))
            first = rgb_to_hsv(r, g, b)
            back = rgb_to_hsv(*hsv_to_rgb(first))
            dh = abs(back.h - first.h)
            assert min(dh, 360.0 - dh) <= 1.5
            assert abs(back.s - first.s) <= 0.01
            assert abs(back.v - first.v) <= 0.01


def test_metrics_suite():
    with criterion("metrics-suite", budget_seconds=30.0):
        assert evaluation.DEFAULT_IOU_THRESHOLD == 0.8
        assert evaluate({}, {}).iou_threshold == 0.8

        rng = np.random.default_rng(0x0E7A1)
        for _ in range(1000):
            a = BoundingBox(int(rng.integers(0, 50)), int(rng.integers(0, 50)),
                            int(rng.integers(1, 40)), int(rng.integers(1, 40)))
            b = BoundingBox(int(rng.integers(0, 50)), int(rng.integers(0, 50)),
                            int(rng.integers(1, 40)), int(rng.integers(1, 40)))
            assert abs(iou(a, b) - rasterized_iou(a, b)) <= 1e-9

        from test_evaluation import _random_fixture

        for seed in range(50):
            preds, truths = _random_fixture(np.random.default_rng(1000 + seed),
                                            n_shots=3, max_boxes=17)
            assert sum(len(v) for v in truths.values()) <= 50
            report = evaluate(preds, truths, 0.8)
            expected = brute_force_evaluate(preds, truths, 0.8)
            overall = expected.pop("_overall")
            assert abs(report.micro_precision - overall["micro_precision"]) <= 1e-12
            assert abs(report.micro_recall - overall["micro_recall"]) <= 1e-12
            assert abs(report.mean_ap - overall["mean_ap"]) <= 1e-12
            for cls_value, exp in expected.items():
                rep = report.per_class[ComponentClass.parse(cls_value)]
                assert (rep.tp, rep.fp, rep.fn) == (exp["tp"], exp["fp"], exp["fn"])
                assert abs(rep.ap - exp["ap"]) <= 1e-12


def test_search_oracle_suite():
    with criterion("search-oracle-suite", budget_seconds=10.0):
        components, apps = random_corpus(1000, seed=0x5EA7C)
        index = build_index(components, apps)
        rng = np.random.default_rng(0x5EA7D)

        for q in _random_queries(rng, 100):
            expected, total = linear_scan_query(components, apps, q)
            page = index.query(q)
            assert page.total == total
            assert [r.component_id for r in page.items] == [
                r.component_id for r in expected[q.offset : q.offset + q.limit]
            ]

        # Pagination walk enumerates every match exactly once, in order.
        walked = []
        offset = 0
        while True:
            page = index.query(QuerySpec(offset=offset, limit=83))
            walked.extend(r.component_id for r in page.items)
            offset += 83
            if offset >= page.total:
                break
        expected, _ = linear_scan_query(components, apps, QuerySpec(limit=200))
        assert walked == [r.component_id for r in expected]
        assert len(set(walked)) == 1000

        # Conjunctivity: adding a facet never increases the total.
        for q in _random_queries(rng, 30):
            base = index.query(q).total
            if q.component_class is None:
                narrowed = dataclasses.replace(q, component_class=ComponentClass.BUTTON)
                assert index.query(narrowed).total <= base
            if q.color is None:
                narrowed = dataclasses.replace(q, color=ColorName.RED)
                assert index.query(narrowed).total <= base


def test_demographics_conservation():
    with criterion("demographics-conservation", budget_seconds=10.0):
        components, apps = random_corpus(1000, seed=0xDE40)
        index = build_index(components, apps)
        rng = np.random.default_rng(0xDE41)
        for q in _random_queries(rng, 50):
            demo = compute_demographics(index, q)
            total = index.query(q).total
            assert sum(demo.class_counts.values()) == total
            assert sum(demo.color_counts.values()) == total
            assert sum(demo.category_counts.values()) == total
            assert len(demo.size_points) == total


def test_comparison_suite():
    with criterion("comparison-suite", budget_seconds=10.0):
        # Sort oracle on the 9-button fixture.
        apps, components = [], []
        for i in range(9):
            app = make_app(f"app{i}", developer="acme", downloads=(9 - i) * 1000)
            apps.append(app)
            components.append(make_component(f"c{i}", app_id=app.app_id))
        index = build_index(components, apps)
        table = compare(index, ["acme"])
        assert len(table.rows) == 11
        assert table.cell(ComponentClass.BUTTON, "acme") == (
            "c0", "c1", "c2", "c3", "c4", "c5"
        )

        # Invariants over a random corpus.
        components, apps = random_corpus(600, seed=0xC04A)
        index = build_index(components, apps)
        companies = eligible_companies(index, 1, 0)
        table = compare(index, companies)
        assert len(table.rows) == 11
        app_by_id = {a.app_id: a for a in apps}
        for cls in ComponentClass:
            for company in companies:
                cell = table.cell(cls, company)
                owned = sum(
                    1 for rec in components
                    if rec.component_class is cls
                    and company_key(app_by_id[rec.app_id].developer) == company
                )
                assert (cell is None) == (owned == 0)
                if cell is not None:
                    assert 0 < len(cell) <= 6


def test_decomposition_suite():
    with criterion("decomposition-suite", budget_seconds=30.0):
        from test_decompose import _synthetic_annotated

        rng = np.random.default_rng(0xA06)
        for i in range(20):
            shot, image = _synthetic_annotated(rng, w=80, h=120, n=3, sid=f"s{i}")
            params = AugmentParams(scale_range=(0.5, 0.9), canvas=(140, 180), seed=100 + i)

            # Bit-reproducibility.
            first = augment_screenshot(shot, image, params)
            second = augment_screenshot(shot, image, params)
            assert (first.canvas == second.canvas).all()
            assert first.record == second.record

            # Crop consistency: canvas equals an independent per-pixel
            # recomputation, and each transformed box interior is the
            # component's fill color.
            out_w = round(80 * first.scale)
            out_h = round(120 * first.scale)
            expected = naive_augment_canvas(
                image, out_w, out_h, first.offset[0], first.offset[1],
                140, 180, params.fill,
            )
            assert (first.canvas == expected).all()
            for (cls, old), (_, new) in zip(shot.components, first.record.components):
                fill = image[old.y + 1, old.x + 1]
                inner = first.canvas[new.y + 2 : new.y2 - 2, new.x + 2 : new.x2 - 2]
                if inner.size:
                    assert (inner == fill).all()

        # Stub detector against planted rectangles, then perfect metrics.
        from guigallery.synth import plant_components, render

        preds, truths = {}, {}
        for i in range(10):
            planted, _ = plant_components(rng, 360, 640, 5, detector_palette=True)
            image = render(360, 640, planted)
            detections = stub_detector().detect(image)
            planted_boxes = {(p.box.x, p.box.y): p for p in planted}
            assert len(detections) == len(planted)
            for det in detections:
                mate = planted_boxes[(det.box.x, det.box.y)]
                assert iou(det.box, mate.box) >= 0.9
                assert det.component_class is mate.component_class
            truths[f"s{i}"] = [(p.component_class, p.box) for p in planted]
            preds[f"s{i}"] = detections
        report = evaluate(preds, truths, 0.8)
        assert report.micro_precision == 1.0
        assert report.micro_recall == 1.0


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def _wait_until_up(client, base, deadline=20.0):
    start = time.monotonic()
    while time.monotonic() - start < deadline:
        try:
            if client.get(base + "/search", params={"limit": 1}).status_code == 200:
                return
        except Exception:
            time.sleep(0.2)
    raise RuntimeError("service did not come up")


def test_end_to_end(tmp_path):
    httpx = pytest.importorskip("httpx")
    with criterion("end-to-end", budget_seconds=60.0):
        from guigallery.synth import generate_corpus

        corpus = tmp_path / "corpus"
        store = tmp_path / "store"
        stats = generate_corpus(corpus / "annotated", corpus / "intro", seed=7)
        assert stats["annotated_components"] >= 500

        subprocess.run(
            [sys.executable, "-m", "guigallery.cli", "ingest",
             "--annotated", str(corpus / "annotated"),
             "--intro", str(corpus / "intro"), "--out", str(store)],
            check=True, capture_output=True, text=True,
        )

        port = _free_port()
        base = f"http://127.0.0.1:{port}"

        def start_server():
            return subprocess.Popen(
                [sys.executable, "-m", "guigallery.cli", "serve",
                 "--store", str(store), "--port", str(port)],
                stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL,
            )

        server = start_server()
        try:
            with httpx.Client(timeout=10.0) as client:
                _wait_until_up(client, base)

                search = client.get(base + "/search", params={"limit": 50}).json()
                assert search["total"] >= 500
                assert len(search["items"]) == 50

                demo = client.get(base + "/demographics").json()
                assert demo["total"] == search["total"]
                assert sum(demo["class_counts"].values()) == search["total"]
                assert sum(demo["color_counts"].values()) == search["total"]
                assert sum(demo["category_counts"].values()) == search["total"]

                cid = search["items"][0]["component_id"]
                detail = client.get(f"{base}/component/{cid}").json()
                assert detail["screenshot"]["uri"].startswith("/images/")
                assert detail["box"]["w"] > 0
                image = client.get(base + detail["screenshot"]["uri"])
                assert image.status_code == 200

                similar = client.get(
                    f"{base}/component/{cid}/similar", params={"k": 5}
                ).json()
                assert len(similar["items"]) == 5

                companies = client.get(base + "/companies").json()["companies"]
                picked = companies[:2]
                table = client.get(
                    base + "/compare", params={"companies": ",".join(picked)}
                ).json()
                assert len(table["rows"]) == 11

                # NONE is encoded as null exactly when the company owns no
                # component of that class (checked against the store).
                from guigallery.store import Store

                data = Store(store).load()
                app_by_id = {a.app_id: a for a in data.apps}
                for row in table["rows"]:
                    for company in picked:
                        owned = sum(
                            1 for rec in data.components
                            if rec.component_class.value == row["class"]
                            and company_key(app_by_id[rec.app_id].developer) == company
                        )
                        cell = row["cells"][company]
                        assert (cell is None) == (owned == 0)
                        if cell is not None:
                            assert 0 < len(cell) <= 6

                entry = client.post(
                    base + "/notebook", json={"component_id": cid, "note": "e2e"}
                ).json()
        finally:
            server.terminate()
            server.wait(timeout=10)

        # Restart: the notebook entry must survive.
        server = start_server()
        try:
            with httpx.Client(timeout=10.0) as client:
                _wait_until_up(client, base)
                entries = client.get(base + "/notebook").json()["entries"]
                assert entry["entry_id"] in {e["entry_id"] for e in entries}
                assert client.delete(
                    f"{base}/notebook/{entry['entry_id']}"
                ).status_code == 204
                remaining = client.get(base + "/notebook").json()["entries"]
                assert entry["entry_id"] not in {e["entry_id"] for e in remaining}
        finally:
            server.terminate()
            server.wait(timeout=10)
