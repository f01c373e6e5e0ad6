"""File formats and report serialization."""

import pytest

from clustereval import single_pass
from clustereval.errors import DuplicateInstance, ParseError
from clustereval.io_formats import (
    FORMAT_CLUSTER_LINES,
    FORMAT_MEMBERSHIP_PAIRS,
    build_report_document,
    parse_clustering,
    parse_report_document,
    render_report_document,
    write_clustering,
    write_report,
)
from clustereval.model import Clustering

from helpers import GOLDEN_PRED_TEXT, GOLDEN_TRUTH_TEXT, golden_pair, pair_from_labels


class TestParseClusterLines:
    def test_golden_truth(self):
        clustering = parse_clustering(GOLDEN_TRUTH_TEXT)
        assert clustering.partition() == Clustering.from_clusters(
            [("1", "2", "3"), ("4", "5"), ("6", "7", "8")]
        ).partition()

    def test_duplicate_reports_both_lines(self):
        with pytest.raises(DuplicateInstance) as err:
            parse_clustering("1 2\n2 3\n")
        assert err.value.instance == "2"
        assert (err.value.first_line, err.value.second_line) == (1, 2)

    def test_comments_blanks_and_crlf(self):
        text = "# heading\r\n\r\n1 2 3\r\n  # indented comment\n4 5\n\n6 7 8\r\n"
        clustering = parse_clustering(text)
        assert clustering.n_instances == 8
        assert len(clustering.clusters) == 3

    def test_multiple_spaces_do_not_drop_tokens(self):
        clustering = parse_clustering("a   b\tc\n", format=FORMAT_CLUSTER_LINES)
        assert clustering.clusters == (("a", "b", "c"),)

    def test_punctuation_ids(self):
        clustering = parse_clustering("kim:j/2003 lee.s-1\n")
        assert clustering.clusters == (("kim:j/2003", "lee.s-1"),)


class TestParseMembershipPairs:
    def test_two_row_grouping(self):
        clustering = parse_clustering("a\tX\nb\tX\n")
        assert clustering.clusters == (("a", "b"),)

    def test_groups_follow_first_appearance(self):
        clustering = parse_clustering("a\tX\nb\tY\nc\tX\n")
        assert clustering.clusters == (("a", "c"), ("b",))

    def test_duplicate_instance_across_labels(self):
        with pytest.raises(DuplicateInstance):
            parse_clustering("a\tX\na\tY\n")

    def test_duplicate_instance_same_label(self):
        with pytest.raises(DuplicateInstance):
            parse_clustering("a\tX\na\tX\n")

    def test_wrong_field_count(self):
        with pytest.raises(ParseError) as err:
            parse_clustering("a\tX\tY\n", format=FORMAT_MEMBERSHIP_PAIRS)
        assert err.value.line == 1

    def test_empty_fields(self):
        with pytest.raises(ParseError):
            parse_clustering("\tX\n", format=FORMAT_MEMBERSHIP_PAIRS)
        with pytest.raises(ParseError):
            parse_clustering("a\t \n", format=FORMAT_MEMBERSHIP_PAIRS)


class TestFormatDetection:
    def test_tab_on_first_data_line_means_pairs(self):
        clustering = parse_clustering("# comment\na\tX\n")
        assert clustering.clusters == (("a",),)

    def test_no_tab_means_cluster_lines(self):
        clustering = parse_clustering("a b\n")
        assert clustering.clusters == (("a", "b"),)

    def test_explicit_format_overrides_detection(self):
        clustering = parse_clustering("a\tX\n", format=FORMAT_CLUSTER_LINES)
        assert clustering.clusters == (("a", "X"),)

    def test_pairs_format_on_tabless_line_fails(self):
        with pytest.raises(ParseError):
            parse_clustering("a b\n", format=FORMAT_MEMBERSHIP_PAIRS)

    def test_invalid_utf8(self):
        with pytest.raises(ParseError):
            parse_clustering(b"\xff\xfe broken")

    def test_utf8_bom_is_stripped(self):
        clustering = parse_clustering(b"\xef\xbb\xbf1 2\n")
        assert clustering.clusters == (("1", "2"),)


class TestClusteringRoundTrip:
    @pytest.mark.parametrize("format", [FORMAT_CLUSTER_LINES, FORMAT_MEMBERSHIP_PAIRS])
    def test_round_trip_preserves_partition(self, format):
        original = parse_clustering(GOLDEN_PRED_TEXT)
        text = write_clustering(original, format=format)
        reparsed = parse_clustering(text, format=format)
        assert reparsed.partition() == original.partition()

    def test_unwritable_ids_rejected(self):
        clustering = Clustering.from_clusters([("a b",)])
        with pytest.raises(ValueError):
            write_clustering(clustering, format=FORMAT_CLUSTER_LINES)


class TestReportDocument:
    def test_round_trip_is_byte_identical(self):
        report = single_pass.evaluate_all(golden_pair())
        rendered = write_report(report, style="machine", timing_seconds=0.00123)
        reparsed = parse_report_document(rendered)
        assert render_report_document(reparsed) == rendered
        assert rendered.encode("utf-8") == render_report_document(reparsed).encode("utf-8")

    def test_fixed_point_rendering(self):
        report = single_pass.evaluate_all(golden_pair())
        rendered = write_report(report, style="machine")
        assert "0.333333333333" in rendered
        assert "0.538461538462" in rendered
        assert "e-" not in rendered and "E-" not in rendered

    def test_required_fields(self):
        report = single_pass.evaluate_all(golden_pair())
        doc = build_report_document(report, engine="single_pass")
        assert doc["schema_version"] == 1
        assert doc["engine"] == "single_pass"
        assert set(doc["measures"]) == {"cluster_f", "k_metric", "se_le", "pairwise", "b_cubed"}
        for name, fields in doc["measures"].items():
            assert {"recall", "precision", "combined"} <= set(fields)
        assert {"se", "le"} <= set(doc["measures"]["se_le"])
        assert set(doc["stats"]) == {
            "n_truth_clusters",
            "n_predicted_clusters",
            "n_instances",
            "pair_tr_sum",
            "pair_pr_sum",
            "pair_int_sum",
        }

    def test_stats_are_integers_after_round_trip(self):
        report = single_pass.evaluate_all(golden_pair())
        doc = parse_report_document(write_report(report, style="machine"))
        assert all(isinstance(v, int) for v in doc["stats"].values())


class TestTableStyle:
    def test_golden_rows(self):
        report = single_pass.evaluate_all(golden_pair())
        table = write_report(report, style="table")
        for fragment in ("0.3333", "0.5000", "0.4000", "0.8367", "0.6154", "0.7619", "0.5385", "0.7000", "0.8235"):
            assert fragment in table
        assert table.index("Cluster-F") < table.index("K-metric") < table.index("SE&LE")
        assert table.index("SE&LE") < table.index("Pairwise-F") < table.index("B-cubed")

    def test_perfect_prediction_rows(self):
        report = single_pass.evaluate_all(pair_from_labels([0, 0, 1], [0, 0, 1]))
        table = write_report(report, style="table")
        assert table.count("1.0000") >= 15

    def test_flags_are_listed(self):
        labels = list(range(5))
        report = single_pass.evaluate_all(pair_from_labels(labels, labels))
        table = write_report(report, style="table")
        assert "degenerate_pairwise_recall" in table
