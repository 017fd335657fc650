import random

import pytest

from tgeval import (
    NodePair,
    ParseError,
    parse_edgelist_csv,
    parse_interaction_csv,
    write_edgelist_csv,
    write_interaction_csv,
)

from conftest import make_random_stream


INTERACTION_HEADER = "user_id,item_id,timestamp,state_label,f1\n"


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestInteractionFormat:
    def test_single_row(self, tmp_path):
        path = write(tmp_path, "one.csv", INTERACTION_HEADER + "0,0,1.0,0,0.5\n")
        stream, report = parse_interaction_csv(path)
        assert len(stream) == 1
        assert stream.edge(0).pair == NodePair(0, 1)  # item 0 offset after 1 user
        assert stream.feature_dim == 1
        assert report == report.__class__(1, 2, 0, 1)

    def test_items_offset_after_users(self, tmp_path):
        text = (
            "user_id,item_id,timestamp,state_label\n"
            "0,0,1.0,0\n"
            "2,1,2.0,0\n"
        )
        stream, report = parse_interaction_csv(write(tmp_path, "b.csv", text))
        assert stream.node_count == 5  # 3 users + 2 items
        assert stream.pairs() == [NodePair(0, 3), NodePair(2, 4)]
        assert report.feature_dim == 0

    def test_out_of_order_rows_are_sorted(self, tmp_path):
        text = INTERACTION_HEADER + "0,0,5.0,0,0.1\n1,1,1.0,0,0.2\n"
        stream, report = parse_interaction_csv(write(tmp_path, "c.csv", text))
        assert stream.ts.tolist() == [1.0, 5.0]
        assert stream.features[:, 0].tolist() == [0.2, 0.1]
        assert report.edges_read == 2 and report.lines_skipped == 0

    def test_blank_lines_are_counted_not_fatal(self, tmp_path):
        text = INTERACTION_HEADER + "0,0,1.0,0,0.5\n\n1,0,2.0,0,0.5\n"
        _, report = parse_interaction_csv(write(tmp_path, "d.csv", text))
        assert report.edges_read == 2
        assert report.lines_skipped == 1

    def test_wrong_arity_reports_line_number(self, tmp_path):
        text = INTERACTION_HEADER + "0,0,1.0,0,0.5\n0,0,2.0\n"
        with pytest.raises(ParseError, match=":3:"):
            parse_interaction_csv(write(tmp_path, "e.csv", text))

    def test_non_numeric_reports_line_number(self, tmp_path):
        text = INTERACTION_HEADER + "0,zero,1.0,0,0.5\n"
        with pytest.raises(ParseError, match=":2:"):
            parse_interaction_csv(write(tmp_path, "f.csv", text))

    def test_empty_file_rejected(self, tmp_path):
        with pytest.raises(ParseError):
            parse_interaction_csv(write(tmp_path, "g.csv", ""))

    def test_round_trip(self, tmp_path):
        rng = random.Random(11)
        rows = ["user_id,item_id,timestamp,state_label,f1,f2"]
        for _ in range(60):
            rows.append(
                f"{rng.randrange(5)},{rng.randrange(4)},{rng.randrange(50)}.0,0,"
                f"{rng.random()!r},{rng.random()!r}"
            )
        path = write(tmp_path, "h.csv", "\n".join(rows) + "\n")
        stream, _ = parse_interaction_csv(path)
        out = tmp_path / "h_export.csv"
        write_interaction_csv(stream, out)
        again, _ = parse_interaction_csv(out)
        assert again == stream


class TestEdgelistFormat:
    def test_densification_first_seen_order(self, tmp_path):
        stream, report = parse_edgelist_csv(write(tmp_path, "a.csv", "a,b,1\nb,c,2\n"))
        assert len(stream) == 2
        assert stream.node_count == 3
        assert stream.pairs() == [NodePair(0, 1), NodePair(1, 2)]
        assert report.nodes_assigned == 3

    def test_weight_column(self, tmp_path):
        stream, _ = parse_edgelist_csv(write(tmp_path, "b.csv", "u,v,1,2.5\n"))
        assert stream.weights.tolist() == [2.5]

    def test_header_autodetected(self, tmp_path):
        stream, report = parse_edgelist_csv(
            write(tmp_path, "c.csv", "src,dst,t\n0,1,1\n1,2,2\n")
        )
        assert report.edges_read == 2
        assert report.lines_skipped == 0

    def test_headerless_numeric_file(self, tmp_path):
        _, report = parse_edgelist_csv(write(tmp_path, "d.csv", "0,1,1\n1,2,2\n"))
        assert report.edges_read == 2

    def test_mixed_arity_rejected(self, tmp_path):
        with pytest.raises(ParseError, match=":2:"):
            parse_edgelist_csv(write(tmp_path, "e.csv", "0,1,1\n1,2,2,0.5\n"))

    def test_non_numeric_timestamp_rejected(self, tmp_path):
        with pytest.raises(ParseError, match=":2:"):
            parse_edgelist_csv(write(tmp_path, "f.csv", "0,1,1\n1,2,soon\n"))

    def test_undirected_canonicalizes(self, tmp_path):
        stream, _ = parse_edgelist_csv(
            write(tmp_path, "g.csv", "b,a,1\n"), directed=False
        )
        # b seen first -> id 0, a -> id 1; canonical pair is (0, 1)
        assert stream.pairs() == [NodePair(0, 1)]

    def test_densification_deterministic(self, tmp_path):
        text = "x,y,3\nw,x,1\ny,w,2\n"
        p1 = write(tmp_path, "h1.csv", text)
        p2 = write(tmp_path, "h2.csv", text)
        s1, _ = parse_edgelist_csv(p1)
        s2, _ = parse_edgelist_csv(p2)
        assert s1 == s2

    def test_round_trip_with_out_of_order_input(self, tmp_path):
        rng = random.Random(23)
        for directed in (True, False):
            for weighted in (True, False):
                rows = []
                for _ in range(50):
                    row = f"v{rng.randrange(8)},v{rng.randrange(8)},{rng.randrange(40)}"
                    if weighted:
                        row += f",{rng.random()!r}"
                    rows.append(row)
                path = write(tmp_path, f"r_{directed}_{weighted}.csv", "\n".join(rows) + "\n")
                stream, _ = parse_edgelist_csv(path, directed=directed)
                out = tmp_path / f"r_{directed}_{weighted}_export.csv"
                write_edgelist_csv(stream, out)
                again, _ = parse_edgelist_csv(out, directed=directed)
                assert again == stream

    def test_parse_export_reaches_fixed_point(self, tmp_path, rng):
        # Re-parsing relabels arbitrary ids by first appearance; after one
        # parse the mapping is stable, so export->parse->export is identity.
        for i in range(10):
            stream = make_random_stream(rng)
            first = tmp_path / f"s{i}_1.csv"
            write_edgelist_csv(stream, first)
            parsed, _ = parse_edgelist_csv(first, directed=stream.directed)
            second = tmp_path / f"s{i}_2.csv"
            write_edgelist_csv(parsed, second)
            reparsed, _ = parse_edgelist_csv(second, directed=stream.directed)
            assert reparsed == parsed
            assert parsed.ts.tolist() == stream.ts.tolist()
            assert len(parsed) == len(stream)
            third = tmp_path / f"s{i}_3.csv"
            write_edgelist_csv(reparsed, third)
            assert third.read_bytes() == second.read_bytes()
