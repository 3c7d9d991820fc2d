import json
import streamlit as st
from typing import List, Optional
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from spinbfv import __version__
from spinbfv.cli import build_report
from spinbfv.cohomology import window
from spinbfv.config import Bounds, RunConfig, config_from_dict
from spinbfv.errors import ConfigError, ParseError, SpinBFVError
from spinbfv.model import DifferentialKind, build_model
from spinbfv.parser import eval_expr, parse_expr
from spinbfv.verify import check_ids, run_suite

# ============================
# Page config
# ============================
st.set_page_config(page_title="spinbfv - Spinning Particle Workbench", layout="wide", page_icon="🌀")

# ============================
# Utilities
# ============================
def parse_b_field(text: str) -> Optional[List[List[str]]]:
    """B field from the sidebar box: one row per line, entries separated by spaces."""
    rows = [line.split() for line in text.strip().splitlines() if line.strip()]
    return rows or None


@st.cache_resource(show_spinner=False)
def cached_model(d: int, b_field_key: str):
    cfg = config_from_dict({"d": d, "b_field": json.loads(b_field_key)})
    return build_model(cfg.d, cfg.b_field)


def status_icon(status: str) -> str:
    return {"pass": "✅", "flagged": "⚠️", "fail": "❌", "skipped": "⏭️"}.get(status, status)

# ============================
# Session state
# ============================
for key in ["history", "last_report", "last_rows"]:
    if key not in st.session_state:
        st.session_state[key] = [] if key != "last_report" else None

# ============================
# Sidebar Controls
# ============================
with st.sidebar:
    st.markdown("## Model")
    st.markdown("---")
    d = st.number_input("Dimension d", min_value=1, max_value=8, value=2, step=1)
    b_text = st.text_area(
        "Magnetic field B (optional)",
        value="",
        placeholder="0 1/2\n-1/2 0",
        help="Antisymmetric d x d matrix of rationals, one row per line.",
    )
    st.markdown("---")
    st.markdown("### Bounds")
    kmax = st.number_input("kmax", min_value=0, max_value=8, value=2, step=1)
    fdeg_max = st.number_input("fdeg_max", min_value=0, max_value=4, value=1, step=1)
    tmax = st.number_input("tmax", min_value=0, max_value=10, value=4, step=1)
    seed = st.number_input("Seed", min_value=0, value=0, step=1)
    samples = st.number_input("Samples per randomized check", min_value=0, max_value=50, value=3, step=1)
    st.markdown("---")
    st.caption(f"spinbfv {__version__}")

# ============================
# Header
# ============================
st.title("spinbfv - Spinning Particle Workbench")
st.caption("Exact checks for the quantized BFV complex of the N=1 spinning particle")

model = None
try:
    b_field = parse_b_field(b_text)
    model = cached_model(int(d), json.dumps(b_field))
except ConfigError as e:
    st.error(str(e))
except SpinBFVError as e:
    st.error(f"Model Error: {e}")

bounds = Bounds(kmax=int(kmax), fdeg_max=int(fdeg_max), tmax=int(tmax))

# ============================
# Expression Section
# ============================
if model is not None:
    with st.expander("Evaluate an expression", expanded=True):
        expr = st.text_input("Expression", placeholder="sb(S(), xi(2, x1))")
        if st.button("Evaluate") and expr:
            try:
                rendering = eval_expr(model, parse_expr(expr, model.d))
                st.session_state.history.append({"expr": expr, "value": rendering.text})
            except ParseError as e:
                st.error(f"Parse Error at byte {e.position}: {e}")
            except SpinBFVError as e:
                st.error(f"Evaluation Error: {e}")
        for item in reversed(st.session_state.history):
            st.markdown(f"`{item['expr']}`")
            st.code(item["value"], language=None)

# ============================
# Verify Section
# ============================
if model is not None:
    st.divider()
    st.subheader("Identity catalog")
    selected: List[str] = st.multiselect("Checks (empty runs all)", options=check_ids())
    if st.button("Run checks"):
        with st.spinner("Checking..."):
            results = run_suite(model, selected, bounds, seed=int(seed), samples=int(samples))
        cfg = RunConfig(d=model.d, b_field=model.b_field, bounds=bounds, seed=int(seed),
                        checks=tuple(selected), samples=int(samples))
        st.session_state.last_report = build_report(cfg, results)

    report = st.session_state.last_report
    if report:
        st.table([
            {
                "": status_icon(r["status"]),
                "check": r["check_id"],
                "location": r["paper_location"],
                "note": r["note"],
            }
            for r in report["results"]
        ])
        st.download_button(
            "Download JSON report",
            data=json.dumps(report, indent=2, sort_keys=True),
            file_name="spinbfv-report.json",
            mime="application/json",
        )

# ============================
# Cohomology Section
# ============================
if model is not None:
    st.divider()
    st.subheader("Cohomology")
    col1, col2, col3 = st.columns(3)
    with col1:
        kind = st.selectbox("Differential", [k.value for k in DifferentialKind if k is not DifferentialKind.QTOTAL])
    with col2:
        ghost_lo, ghost_hi = st.slider("Ghost window", min_value=-6, max_value=4, value=(-2, 0))
    with col3:
        with_e2 = st.checkbox("E2 page", value=False, disabled=not model.flat or kind != "q0")
    if st.button("Compute Betti numbers"):
        with st.spinner("Reducing matrices..."):
            try:
                rows = window(model, kind, range(ghost_lo, ghost_hi + 1), range(bounds.tmax + 1),
                              e2=with_e2, with_family=kind == "q0")
                st.session_state.last_rows = [row.to_dict() for row in rows.rows]
            except SpinBFVError as e:
                st.error(f"Evaluation Error: {e}")
    if st.session_state.last_rows:
        st.dataframe(st.session_state.last_rows, use_container_width=True)

# ============================
# Reset
# ============================
if st.button("Start New Session"):
    for key in ["history", "last_report", "last_rows"]:
        st.session_state[key] = [] if key != "last_report" else None
    st.rerun()
