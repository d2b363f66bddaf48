import logging

import streamlit as st

from errors import DecompositionError
from graph_io import GraphFileValidator, format_graph
from involution_modules import imd_tree
from problem_catalog import ProblemCatalog
from switch_cograph import binary_imdt, forbidden_subgraph_witness, is_switch_cograph, random_switch_cograph
from tree_reports import DecompositionReportGenerator
from two_structure import Graph

logger = logging.getLogger(__name__)

SAMPLE_TEXT = "graph 4\n0 1\n1 2\n2 3\n"


def _input_text() -> str:
    st.sidebar.header("Input")
    source = st.sidebar.radio("Source", ["Paste", "Upload", "Generate"])
    if source == "Upload":
        uploaded = st.sidebar.file_uploader("Graph or 2-structure file", type=["txt", "graph"])
        return uploaded.getvalue().decode() if uploaded is not None else ""
    if source == "Generate":
        n = st.sidebar.slider("Vertices", 1, 60, 12)
        seed = st.sidebar.number_input("Seed", min_value=0, value=0, step=1)
        antitwin_prob = st.sidebar.slider("Antitwin probability", 0.0, 1.0, 0.5)
        return format_graph(random_switch_cograph(n, seed=int(seed), antitwin_prob=antitwin_prob))
    return st.sidebar.text_area("File contents", SAMPLE_TEXT, height=220)


def _show_graph_results(g: Graph, reports: DecompositionReportGenerator, catalog: ProblemCatalog):
    recognized = is_switch_cograph(g)
    if not recognized:
        st.warning("Not a switch cograph")
        if g.n <= 40:
            witness = forbidden_subgraph_witness(g)
            st.write(f"Induced **{witness.name}** on vertices {list(witness.vertices)}")
        return
    st.success("Switch cograph")

    tree = binary_imdt(g)
    st.subheader("Binary decomposition tree")
    st.dataframe(reports.binary_node_table(tree), use_container_width=True)
    st.graphviz_chart(reports.binary_to_dot(tree))

    st.subheader("Solver results")
    st.dataframe(catalog.solve_all(g), use_container_width=True)


def main():
    st.set_page_config(page_title="Involution Modular Decomposition", layout="wide")
    st.title("Involution Modular Decomposition")
    st.markdown("Decompose a graph or 2-structure and solve problems on switch cographs.")

    text = _input_text()
    if not text.strip():
        st.info("Provide a file to start.")
        return

    validator = GraphFileValidator()
    validation = validator.validate_text(text)
    with st.expander("Validation report", expanded=not validation['valid']):
        for message in validation['errors']:
            st.error(message)
        for message in validation['warnings']:
            st.warning(message)
        st.json(validation['summary'])
    if not validation['valid']:
        return

    reports = DecompositionReportGenerator()
    catalog = ProblemCatalog()
    try:
        ts, involution = validator.parse(text)
        st.subheader("Involution-module tree")
        st.graphviz_chart(reports.crossing_to_dot(imd_tree(ts, involution)))
        if isinstance(ts, Graph):
            _show_graph_results(ts, reports, catalog)
        report = reports.generate_report(ts, involution)
        st.download_button("Download report", report['content'], file_name="decomposition_report.md")
    except DecompositionError as e:
        st.error(f"Decomposition failed: {e}")


if __name__ == "__main__":
    main()
