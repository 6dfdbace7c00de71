"""HTTP facade over the index: search, detail, similarity, demographics,
comparison and the persistent design notebook.

The index is built once from the store at startup and shared read-only;
notebook writes serialize through the append log. Read endpoints are pure
functions of (store state, request).
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from guigallery.colors import ColorName
from guigallery.comparison import UnknownCompany, compare, eligible_companies
from guigallery.demographics import compute_demographics
from guigallery.index import (
    GalleryIndex,
    InvalidQuery,
    QuerySpec,
    UnknownComponent,
    build_index,
)
from guigallery.model import ComponentClass, ComponentRecord, ScreenshotRecord
from guigallery.store import GalleryConfig, Store

DEFAULT_SIMILAR_K = 10


def _bad(name: str) -> HTTPException:
    return HTTPException(status_code=400, detail=f"malformed parameter: {name}")


def _parse_int(params, name: str) -> Optional[int]:
    raw = params.get(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise _bad(name)


def _parse_query(params, *, paginated: bool) -> QuerySpec:
    cls = params.get("class")
    color = params.get("color")
    kwargs = {}
    try:
        kwargs["component_class"] = ComponentClass.parse(cls) if cls is not None else None
    except ValueError:
        raise _bad("class")
    try:
        kwargs["color"] = ColorName.parse(color) if color is not None else None
    except ValueError:
        raise _bad("color")
    kwargs["category"] = params.get("category")
    kwargs["text"] = params.get("text")
    for name in ("min_w", "max_w", "min_h", "max_h"):
        kwargs[name] = _parse_int(params, name)
    if paginated:
        offset = _parse_int(params, "offset")
        kwargs["offset"] = offset if offset is not None else 0
        limit = _parse_int(params, "limit")
        kwargs["limit"] = limit if limit is not None else 30
    try:
        return QuerySpec(**kwargs)
    except InvalidQuery as exc:
        # min > max is a consistent-but-unsatisfiable request: 422; anything
        # else (bad limit/offset) is a malformed parameter: 400.
        if exc.field_name in ("min_w", "min_h"):
            raise HTTPException(status_code=422, detail=str(exc))
        raise _bad(exc.field_name)


class GalleryState:
    def __init__(self, store: Store, config: Optional[GalleryConfig] = None):
        self.store = store
        self.config = config if config is not None else store.config()
        data = store.load()
        self.screenshots: dict[str, ScreenshotRecord] = {
            s.screenshot_id: s for s in data.screenshots
        }
        self.index: GalleryIndex = build_index(data.components, data.apps)
        self.notebook = store.notebook()

    def summary(self, rec: ComponentRecord) -> dict:
        app = self.index.app(rec.app_id)
        return {
            "component_id": rec.component_id,
            "class": rec.component_class.value,
            "box": {"x": rec.box.x, "y": rec.box.y, "w": rec.box.w, "h": rec.box.h},
            "color": rec.color.primary.value,
            "text": rec.text,
            "thumbnail": f"/images/thumbs/{rec.component_id}.png",
            "app_name": app.name,
        }


def create_app(store: Store, config: Optional[GalleryConfig] = None) -> FastAPI:
    state = GalleryState(store, config)
    app = FastAPI(title="gui component gallery", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.gallery = state

    @app.exception_handler(UnknownComponent)
    async def _unknown_component(request: Request, exc: UnknownComponent):
        return JSONResponse(status_code=404, content={"detail": f"unknown component: {exc.args[0]}"})

    @app.get("/search")
    def search(request: Request):
        q = _parse_query(request.query_params, paginated=True)
        page = state.index.query(q)
        return {
            "items": [state.summary(rec) for rec in page.items],
            "total": page.total,
            "offset": page.offset,
            "limit": page.limit,
        }

    def _rel_under_images(shot: ScreenshotRecord) -> str:
        # Store image paths look like images/annotated/<file>; the static
        # mount already serves the images/ directory.
        rel = shot.image
        return rel[len("images/"):] if rel.startswith("images/") else rel

    @app.get("/component/{component_id}")
    def component_detail(component_id: str):
        rec = state.index.component(component_id)
        app_rec = state.index.app(rec.app_id)
        shot = state.screenshots[rec.screenshot_id]
        return {
            "component": {
                **state.summary(rec),
                "histogram": {
                    name.value: frac for name, frac in rec.color.histogram.items()
                },
                "source": rec.source.value,
                "confidence": rec.confidence,
            },
            "screenshot": {
                "screenshot_id": shot.screenshot_id,
                "uri": f"/images/{_rel_under_images(shot)}",
                "width": shot.width,
                "height": shot.height,
                "kind": shot.kind.value,
            },
            "box": {"x": rec.box.x, "y": rec.box.y, "w": rec.box.w, "h": rec.box.h},
            "app": {
                "app_id": app_rec.app_id,
                "name": app_rec.name,
                "category": app_rec.category,
                "developer": app_rec.developer,
                "downloads": app_rec.downloads,
                "rating": app_rec.rating,
            },
        }

    @app.get("/component/{component_id}/similar")
    def component_similar(component_id: str, k: int = DEFAULT_SIMILAR_K):
        if k < 1:
            raise _bad("k")
        neighbours = state.index.similar(
            component_id, k, state.config.similarity_weights()
        )
        return {
            "items": [
                {**state.summary(state.index.component(cid)), "score": score}
                for cid, score in neighbours
            ]
        }

    @app.get("/demographics")
    def demographics(request: Request):
        q = _parse_query(request.query_params, paginated=False)
        demo = compute_demographics(state.index, q)
        return {
            "total": demo.total,
            "class_counts": {c.value: n for c, n in demo.class_counts.items()},
            "color_counts": {c.value: n for c, n in demo.color_counts.items()},
            "size_points": [{"w": w, "h": h} for w, h in demo.size_points],
            "category_counts": dict(demo.category_counts),
        }

    @app.get("/companies")
    def companies():
        keys = eligible_companies(
            state.index, state.config.min_apps, state.config.min_downloads
        )
        return {"companies": keys}

    @app.get("/compare")
    def compare_companies(companies: str = ""):
        keys = [c.strip() for c in companies.split(",") if c.strip()]
        if not keys:
            raise _bad("companies")
        try:
            table = compare(state.index, keys)
        except UnknownCompany as exc:
            raise HTTPException(status_code=404, detail=f"unknown company: {exc.args[0]}")
        return {
            "companies": list(table.companies),
            "rows": [
                {
                    "class": cls.value,
                    "cells": {
                        company: (
                            [
                                state.summary(state.index.component(cid))
                                for cid in cell
                            ]
                            if cell is not None
                            else None
                        )
                        for company, cell in row.items()
                    },
                }
                for cls, row in table.rows.items()
            ],
            "color_dist": {
                company: {name.value: frac for name, frac in dist.items()}
                for company, dist in table.color_dist.items()
            },
        }

    @app.post("/notebook", status_code=201)
    async def notebook_add(request: Request):
        try:
            body = await request.json()
        except Exception:
            raise HTTPException(status_code=400, detail="malformed body")
        if not isinstance(body, dict) or not isinstance(body.get("component_id"), str):
            raise HTTPException(status_code=400, detail="malformed body")
        component_id = body["component_id"]
        note = body.get("note", "")
        if not isinstance(note, str):
            raise HTTPException(status_code=400, detail="malformed body")
        state.index.component(component_id)  # 404 when unknown
        entry = state.notebook.add(component_id, note)
        return _entry_json(entry)

    @app.get("/notebook")
    def notebook_list():
        return {"entries": [_entry_json(e) for e in state.notebook.entries()]}

    @app.delete("/notebook/{entry_id}", status_code=204)
    def notebook_delete(entry_id: str):
        if not state.notebook.delete(entry_id):
            raise HTTPException(status_code=404, detail=f"unknown entry: {entry_id}")

    def _entry_json(entry):
        return {
            "entry_id": entry.entry_id,
            "component_id": entry.component_id,
            "note": entry.note,
            "created_at": entry.created_at,
        }

    if store.images_dir.is_dir():
        app.mount("/images", StaticFiles(directory=store.images_dir), name="images")

    return app
