import pytest
from hypothesis import given, strategies as st

from unra.errors import ParseError, ValidationError
from unra.netio import HeteroNetwork, NodeRef, load_network, save_network, validate

from conftest import make_network

local_ids = st.text(
    st.characters(min_codepoint=33, max_codepoint=126, exclude_characters=":"),
    min_size=1,
    max_size=12,
)


class TestNodeRef:
    @given(st.integers(min_value=1, max_value=99), local_ids)
    def test_render_parse_round_trip(self, source_id, local_id):
        ref = NodeRef(source_id, local_id)
        assert NodeRef.parse(ref.render()) == ref

    def test_rendered_form(self):
        assert NodeRef(3, "abc").render() == "3:abc"
        assert str(NodeRef(1, "x")) == "1:x"

    @pytest.mark.parametrize("bad", ["", "a b", "a:b", "a\tb", " "])
    def test_rejects_bad_local_ids(self, bad):
        with pytest.raises(ValidationError):
            NodeRef(1, bad)

    def test_rejects_nonpositive_source(self):
        with pytest.raises(ValidationError):
            NodeRef(0, "a")

    @pytest.mark.parametrize("text", ["abc", "x:a", ":a", "1:"])
    def test_parse_rejects_malformed(self, text):
        with pytest.raises(ValidationError):
            NodeRef.parse(text)

    def test_ordering_is_source_then_id(self):
        assert sorted([NodeRef(2, "a"), NodeRef(1, "z"), NodeRef(1, "a")]) == [
            NodeRef(1, "a"),
            NodeRef(1, "z"),
            NodeRef(2, "a"),
        ]


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadNetwork:
    def test_basic_load(self, tmp_path):
        e1 = _write(tmp_path / "e1.tsv", "a\tb\nb\tc\n")
        e2 = _write(tmp_path / "e2.tsv", "x\ty\n")
        docs = _write(tmp_path / "d.tsv", "0\thello world\n1\tfoo bar baz\n")
        links = _write(tmp_path / "l.tsv", "0\t1:a\t2:x\n1\t1:c\n")
        labels = _write(tmp_path / "lab.tsv", "0\tA\n1\tB\n")
        net = load_network([e1, e2], docs, links, labels)
        assert net.num_sources == 2
        assert net.nodes[1] == ["a", "b", "c"]
        assert net.nodes[2] == ["x", "y"]
        assert net.edges[1] == [("a", "b"), ("b", "c")]
        assert net.documents[1] == ["foo", "bar", "baz"]
        assert net.links[0] == [NodeRef(1, "a"), NodeRef(2, "x")]
        assert net.labels == {0: "A", 1: "B"}

    def test_edges_deduplicate_both_orders(self, tmp_path):
        e1 = _write(tmp_path / "e1.tsv", "a\tb\nb\ta\na\tb\n")
        docs = _write(tmp_path / "d.tsv", "0\tw\n")
        links = _write(tmp_path / "l.tsv", "0\t1:a\n")
        net = load_network([e1], docs, links)
        assert net.edges[1] == [("a", "b")]

    def test_link_only_nodes_exist(self, tmp_path):
        e1 = _write(tmp_path / "e1.tsv", "a\tb\n")
        docs = _write(tmp_path / "d.tsv", "0\tw\n")
        links = _write(tmp_path / "l.tsv", "0\t1:zzz\n")
        net = load_network([e1], docs, links)
        assert "zzz" in net.nodes[1]

    def test_blank_lines_skipped(self, tmp_path):
        e1 = _write(tmp_path / "e1.tsv", "a\tb\n\n\nb\tc\n")
        docs = _write(tmp_path / "d.tsv", "0\tw\n\n")
        links = _write(tmp_path / "l.tsv", "0\t1:a\n")
        net = load_network([e1], docs, links)
        assert len(net.edges[1]) == 2

    def test_parse_error_names_file_and_line(self, tmp_path):
        e1 = _write(tmp_path / "e1.tsv", "a\tb\nonly_one_field\n")
        docs = _write(tmp_path / "d.tsv", "0\tw\n")
        links = _write(tmp_path / "l.tsv", "0\t1:a\n")
        with pytest.raises(ParseError) as err:
            load_network([e1], docs, links)
        assert "e1.tsv" in str(err.value)
        assert err.value.lineno == 2

    def test_bad_doc_index(self, tmp_path):
        e1 = _write(tmp_path / "e1.tsv", "a\tb\n")
        links = _write(tmp_path / "l.tsv", "0\t1:a\n")
        for bad in ("x\tw\n", "-1\tw\n"):
            docs = _write(tmp_path / "d.tsv", bad)
            with pytest.raises(ParseError):
                load_network([e1], docs, links)

    def test_duplicate_doc_index(self, tmp_path):
        e1 = _write(tmp_path / "e1.tsv", "a\tb\n")
        docs = _write(tmp_path / "d.tsv", "0\tw\n0\tv\n")
        links = _write(tmp_path / "l.tsv", "0\t1:a\n")
        with pytest.raises(ValidationError):
            load_network([e1], docs, links)

    def test_link_for_unknown_document(self, tmp_path):
        e1 = _write(tmp_path / "e1.tsv", "a\tb\n")
        docs = _write(tmp_path / "d.tsv", "0\tw\n")
        links = _write(tmp_path / "l.tsv", "5\t1:a\n")
        with pytest.raises(ValidationError):
            load_network([e1], docs, links)

    def test_link_source_out_of_range(self, tmp_path):
        e1 = _write(tmp_path / "e1.tsv", "a\tb\n")
        docs = _write(tmp_path / "d.tsv", "0\tw\n")
        links = _write(tmp_path / "l.tsv", "0\t7:a\n")
        with pytest.raises(ValidationError):
            load_network([e1], docs, links)

    def test_label_on_unknown_document(self, tmp_path):
        e1 = _write(tmp_path / "e1.tsv", "a\tb\n")
        docs = _write(tmp_path / "d.tsv", "0\tw\n")
        links = _write(tmp_path / "l.tsv", "0\t1:a\n")
        labels = _write(tmp_path / "lab.tsv", "9\tA\n")
        with pytest.raises(ValidationError):
            load_network([e1], docs, links, labels)

    def test_label_with_whitespace_rejected(self, tmp_path):
        e1 = _write(tmp_path / "e1.tsv", "a\tb\n")
        docs = _write(tmp_path / "d.tsv", "0\tw\n")
        links = _write(tmp_path / "l.tsv", "0\t1:a\n")
        labels = _write(tmp_path / "lab.tsv", "0\ttwo words\n")
        with pytest.raises(ParseError):
            load_network([e1], docs, links, labels)

    def test_labels_optional(self, tmp_path):
        e1 = _write(tmp_path / "e1.tsv", "a\tb\n")
        docs = _write(tmp_path / "d.tsv", "0\tw\n")
        links = _write(tmp_path / "l.tsv", "0\t1:a\n")
        net = load_network([e1], docs, links, None)
        assert net.labels == {}


class TestSaveLoadRoundTrip:
    def test_round_trip_equality(self, tmp_path, tiny_network):
        paths = save_network(tiny_network, tmp_path / "out")
        edge_paths = [paths["edges_1"], paths["edges_2"]]
        again = load_network(edge_paths, paths["docs"], paths["links"], paths["labels"])
        assert again == tiny_network

    def test_round_trip_without_labels(self, tmp_path):
        net = make_network({1: [("a", "b")]}, documents={0: ["w"]}, links={0: [(1, "a")]})
        paths = save_network(net, tmp_path / "out")
        assert "labels" not in paths
        again = load_network([paths["edges_1"]], paths["docs"], paths["links"])
        assert again == net


class TestValidate:
    def test_counts_and_isolates(self):
        net = make_network(
            {1: [("a", "b")]},
            documents={0: ["w"], 1: ["v"]},
            links={0: [(1, "a")], 1: [(1, "lonely")]},
            labels={0: "A"},
        )
        report = validate(net)
        assert report.node_counts == {1: 3}
        assert report.edge_counts == {1: 1}
        assert report.document_count == 2
        assert report.labeled_count == 1
        assert report.isolated_nodes == [NodeRef(1, "lonely")]
        assert report.unlinked_documents == []
        assert "isolated nodes: 1" in report.summary()

    def test_unlinked_documents_reported(self):
        net = make_network({1: [("a", "b")]}, documents={0: ["w"], 3: ["v"]},
                           links={0: [(1, "a")]})
        assert validate(net).unlinked_documents == [3]

    def test_self_loop_is_not_isolation(self):
        net = make_network({1: [("a", "a"), ("b", "c")]})
        assert validate(net).isolated_nodes == []

    def test_adjacency_sorted_with_self_loop(self):
        net = make_network({1: [("b", "a"), ("a", "a"), ("a", "c")]})
        adj = net.adjacency(1)
        assert adj["a"] == ["a", "b", "c"]
        assert adj["b"] == ["a"]
