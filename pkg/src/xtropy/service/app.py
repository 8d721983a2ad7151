"""HTTP front door for the measure, convolution and verification layers.

The handlers are thin: parse strings into core objects, call the pure
functions, shape the answer for the wire.  ``ValueError`` from the core
is a request problem and comes back as 400; everything here is stateless
so the app can be created per process or per test without ceremony.

Run with: ``uvicorn xtropy.service.app:app``
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, convolution, measures, verify
from ..distributions import FAMILY_FORMATS, parse_distribution, parse_pmf
from ..measures import IntervalCondition
from ..reporting import measure_row, pair_to_mapping, report_to_mapping
from ..weights import WEIGHT_FORMATS, parse_weight
from .schemas import (
    CatalogResponse,
    DiffDensityRequest,
    DiffExpectRequest,
    DiffWextropyRequest,
    DiscreteRequest,
    DiscreteResponse,
    MeasureRequest,
    RowsResponse,
    SweepRequest,
    VerifyLemmaARequest,
    VerifyLemmaBRequest,
    VerifyTheorem1Request,
    VerifyTheorem2Request,
    WindowModel,
)

__all__ = ["create_app", "app"]


def _interval(window: WindowModel | None) -> IntervalCondition | None:
    if window is None:
        return None
    return IntervalCondition(window.c, window.d)


def create_app() -> FastAPI:
    app = FastAPI(
        title="xtropy",
        version=__version__,
        description="Entropy and extropy measures of interval-conditioned "
        "distributions, difference densities, and monotonicity verification.",
    )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/catalog", response_model=CatalogResponse)
    def catalog() -> CatalogResponse:
        return CatalogResponse(
            distributions=dict(FAMILY_FORMATS),
            measures={k: dict(v) for k, v in measures.MEASURES.items()},
            weights=dict(WEIGHT_FORMATS),
            phis=dict(convolution.PHI_FORMATS),
            conventions=[convolution.NORMALIZED, convolution.PAPER_LITERAL],
        )

    @app.post("/measure", response_model=RowsResponse)
    def measure(req: MeasureRequest) -> dict:
        dist = parse_distribution(req.dist)
        weight = parse_weight(req.weight) if req.weight is not None else None
        interval = _interval(req.interval)
        mv = measures.compute_measure(
            dist,
            req.measure,
            weight=weight,
            theta=req.theta,
            lam=req.lam,
            interval=interval,
            cfg=req.config.to_config(),
        )
        row = measure_row(
            interval.c if interval else None,
            interval.d if interval else None,
            req.measure,
            weight.weight_id if weight else None,
            mv,
        )
        return {"rows": [row]}

    @app.post("/sweep", response_model=RowsResponse)
    def sweep(req: SweepRequest) -> dict:
        dist = parse_distribution(req.dist)
        weight = parse_weight(req.weight) if req.weight is not None else None
        cfg = req.config.to_config()
        if not req.c_grid or not req.d_grid:
            raise ValueError("sweep needs nonempty c and d grids")
        rows = []
        for c in req.c_grid:
            for d in req.d_grid:
                if not c < d:
                    continue
                mv = measures.compute_measure(
                    dist,
                    req.measure,
                    weight=weight,
                    theta=req.theta,
                    lam=req.lam,
                    interval=IntervalCondition(c, d),
                    cfg=cfg,
                )
                rows.append(
                    measure_row(c, d, req.measure, weight.weight_id if weight else None, mv)
                )
        if not rows:
            raise ValueError("no grid pair satisfies c < d")
        return {"rows": rows}

    @app.post("/diff/density", response_model=RowsResponse)
    def diff_density(req: DiffDensityRequest) -> dict:
        dist = parse_distribution(req.dist)
        ctx = convolution.DiffDensityContext(
            dist, _interval(req.interval), req.convention, req.config.to_config()
        )
        rows = []
        for v in req.v_grid:
            if not 0.0 <= v <= ctx.width:
                raise ValueError(f"v={v!r} outside [0, d-c]")
            mv = convolution.diff_density_result(ctx, v)
            rows.append(
                measure_row(ctx.c, ctx.d, f"diff_density@{float(v)!r}", req.convention, mv)
            )
        return {"rows": rows}

    @app.post("/diff/expectation")
    def diff_expectation(req: DiffExpectRequest) -> dict:
        dist = parse_distribution(req.dist)
        phi = convolution.parse_phi(req.phi)
        interval = _interval(req.interval)
        label = f"diff_expect:{req.phi}"
        if req.method == "mc":
            estimate, stderr = verify.mc_oracle(dist, interval, phi, req.n, req.seed)
            ctx = convolution.DiffDensityContext(dist, interval)
            row = measure_row(
                ctx.c, ctx.d, label, None, measures.MeasureValue(estimate, stderr)
            )
            return {"rows": [row], "method": "mc", "n": req.n, "seed": req.seed}
        ctx = convolution.DiffDensityContext(
            dist, interval, cfg=req.config.to_config()
        )
        mv = convolution.conditional_expectation(ctx, phi)
        row = measure_row(ctx.c, ctx.d, label, None, mv)
        return {"rows": [row], "method": "quad"}

    @app.post("/diff/weighted-extropy", response_model=RowsResponse)
    def diff_weighted_extropy(req: DiffWextropyRequest) -> dict:
        dist = parse_distribution(req.dist)
        weight = parse_weight(req.weight)
        ctx = convolution.DiffDensityContext(
            dist, _interval(req.interval), cfg=req.config.to_config()
        )
        mv = convolution.weighted_extropy_of_diff(ctx, weight)
        row = measure_row(ctx.c, ctx.d, "diff_wextropy", weight.weight_id, mv)
        return {"rows": [row]}

    @app.post("/discrete")
    def discrete(req: DiscreteRequest) -> DiscreteResponse:
        pmf = parse_pmf(req.pmf)
        return DiscreteResponse(
            entropy=measures.discrete_entropy(pmf),
            extropy=measures.discrete_extropy(pmf),
        )

    @app.post("/verify/theorem1")
    def verify_theorem1(req: VerifyTheorem1Request) -> dict:
        dist = parse_distribution(req.dist)
        report = verify.verify_theorem1(dist, req.c, req.d_grid, req.config.to_config())
        return report_to_mapping(report)

    @app.post("/verify/theorem2")
    def verify_theorem2(req: VerifyTheorem2Request) -> dict:
        dist = parse_distribution(req.dist)
        weight = parse_weight(req.weight)
        pair = verify.verify_theorem2(
            dist, weight, req.c_grid, req.d_grid, req.config.to_config()
        )
        return pair_to_mapping(pair)

    @app.post("/verify/lemma-a")
    def verify_lemma_a(req: VerifyLemmaARequest) -> dict:
        dist = parse_distribution(req.dist)
        phi = convolution.parse_phi(req.phi)
        pair = verify.verify_lemma_a(
            dist, phi, req.c_grid, req.d_grid, req.config.to_config(), phi_id=req.phi
        )
        return pair_to_mapping(pair)

    @app.post("/verify/lemma-b")
    def verify_lemma_b(req: VerifyLemmaBRequest) -> dict:
        dist = parse_distribution(req.dist)
        report = verify.verify_lemma_b(
            dist,
            _interval(req.interval),
            req.v_grid,
            req.config.to_config(),
            req.convention,
        )
        return report_to_mapping(report)

    return app


app = create_app()
