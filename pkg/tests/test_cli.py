from __future__ import annotations

from conftest import SCHEMA_PATH, WORKLOAD_PATH

from idxminer.cli import main

OUTPUT_FILES = ("recommendation.sql", "report.txt", "report.dat")


def run(args):
    return main(args)


def test_fixture_run_succeeds(fixture_args, tmp_path, capsys):
    out = tmp_path / "out"
    assert run(fixture_args(out=out)) == 0
    for name in OUTPUT_FILES:
        assert (out / name).exists()
    ddl = (out / "recommendation.sql").read_text(encoding="utf-8")
    assert "CREATE INDEX" in ddl
    stdout = capsys.readouterr().out
    assert stdout == (out / "report.txt").read_text(encoding="utf-8")


def test_missing_workload_path_exits_2(fixture_args, capsys):
    args = fixture_args()
    args[args.index("--workload") + 1] = "/nonexistent/workload.sql"
    assert run(args) == 2


def test_large_tables_without_stats_exits_1(tmp_path, capsys):
    assert run([
        "--workload", str(WORKLOAD_PATH),
        "--schema", str(SCHEMA_PATH),
        "--strategy", "large-tables",
        "--out", str(tmp_path / "out"),
    ]) == 1


def test_minsup_zero_exits_1(fixture_args, capsys):
    assert run(fixture_args("--minsup", "0")) == 1


def test_minsup_above_one_exits_1(fixture_args, capsys):
    assert run(fixture_args("--minsup", "1.5")) == 1


def test_unknown_flag_exits_1(fixture_args, capsys):
    assert run(fixture_args("--frobnicate")) == 1


def test_bad_strategy_exits_1(fixture_args, capsys):
    assert run(fixture_args("--strategy", "sideways")) == 1


def test_unknown_dialect_exits_1(fixture_args, capsys):
    assert run(fixture_args("--dialect", "tsql")) == 1


def test_bad_policy_position_exits_1(fixture_args, capsys):
    assert run(fixture_args("--policy", "where,sideways")) == 1


def test_malformed_schema_exits_2(fixture_args, tmp_path, capsys):
    bad = tmp_path / "schema.txt"
    bad.write_text("not a stanza\n", encoding="utf-8")
    args = fixture_args()
    args[args.index("--schema") + 1] = str(bad)
    assert run(args) == 2


def test_malformed_stats_exits_2(fixture_args, tmp_path, capsys):
    bad = tmp_path / "stats.txt"
    bad.write_text("lineitem\tlots\n", encoding="utf-8")
    args = fixture_args()
    args[args.index("--stats") + 1] = str(bad)
    assert run(args) == 2


def test_stats_missing_candidate_table_under_large_tables_exits_1(
    fixture_args, tmp_path, capsys
):
    partial = tmp_path / "stats.txt"
    partial.write_text("lineitem\t6000000\t120\n", encoding="utf-8")
    args = fixture_args("--strategy", "large-tables")
    args[args.index("--stats") + 1] = str(partial)
    assert run(args) == 1
    assert "no statistics" in capsys.readouterr().err


def test_statement_diagnostics_keep_exit_zero(tmp_path, capsys):
    workload = tmp_path / "w.sql"
    workload.write_text(
        "SELECT a FROM t WHERE t.b = 1;\nTHIS IS NOT SQL;\n", encoding="utf-8"
    )
    schema = tmp_path / "s.txt"
    schema.write_text("TABLE t\n a\n b\n", encoding="utf-8")
    assert run([
        "--workload", str(workload),
        "--schema", str(schema),
        "--minsup", "1",
        "--out", str(tmp_path / "out"),
    ]) == 0


def test_empty_workload_is_success(tmp_path, capsys):
    workload = tmp_path / "w.sql"
    workload.write_text("-- nothing here\n", encoding="utf-8")
    schema = tmp_path / "s.txt"
    schema.write_text("TABLE t\n a\n", encoding="utf-8")
    out = tmp_path / "out"
    assert run([
        "--workload", str(workload),
        "--schema", str(schema),
        "--out", str(out),
    ]) == 0
    assert (out / "recommendation.sql").read_text(encoding="utf-8") == ""


def test_two_runs_are_byte_identical(fixture_args, tmp_path, capsys):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert run(fixture_args(out=out_a)) == 0
    assert run(fixture_args(out=out_b)) == 0
    for name in OUTPUT_FILES:
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


def test_mine_only_dump_matches_bruteforce_oracle(fixture_args, capsys, tpcr_schema,
                                                  tpcr_workload_text):
    from idxminer.advisor import build_database
    from idxminer.miner import MinSupport, TransactionDatabase, mine_bruteforce
    from idxminer.workload import extract_workload, parse_workload

    assert run(fixture_args("--mine-only")) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l]
    dumped = [
        (int(line.split("\t")[0]), tuple(line.split("\t")[1].split(",")))
        for line in lines
    ]
    supports = [s for s, _ in dumped]
    assert supports == sorted(supports, reverse=True)

    queries = parse_workload(tpcr_workload_text, tpcr_schema)
    db, items_by_id = build_database(extract_workload(queries, tpcr_schema))
    threshold = MinSupport(0.25).resolve(len(db.transactions))
    frequent = {
        i for i in db.universe
        if sum(1 for row in db.transactions if i in row) >= threshold
    }
    projected = TransactionDatabase.from_transactions(
        [row & frequent for row in db.transactions]
    )
    expected = [
        (c.support, tuple(str(items_by_id[i]) for i in c.items))
        for c in mine_bruteforce(projected, MinSupport(threshold))
    ]
    assert dumped == expected


def test_mine_only_empty_workload(tmp_path, capsys):
    workload = tmp_path / "w.sql"
    workload.write_text("", encoding="utf-8")
    schema = tmp_path / "s.txt"
    schema.write_text("TABLE t\n a\n", encoding="utf-8")
    assert run([
        "--workload", str(workload),
        "--schema", str(schema),
        "--mine-only",
    ]) == 0
    assert capsys.readouterr().out == ""


def test_no_maximal_only_keeps_subsumed_candidates(fixture_args, tmp_path, capsys):
    out = tmp_path / "out"
    assert run(fixture_args("--no-maximal-only", out=out)) == 0
    ddl = (out / "recommendation.sql").read_text(encoding="utf-8")
    # with subsumption off the single-column o_orderdate index survives
    assert "CREATE INDEX idx_orders_o_orderdate ON orders (o_orderdate);" in ddl
    assert "ON orders (o_orderdate, o_custkey);" in ddl


def test_policy_flag_changes_extraction(fixture_args, tmp_path, capsys):
    out = tmp_path / "out"
    assert run(fixture_args("--policy", "join", out=out)) == 0
    ddl = (out / "recommendation.sql").read_text(encoding="utf-8")
    assert "l_shipdate" not in ddl  # WHERE-only column disappears under join-only policy


def test_large_tables_strategy_drops_small_tables(fixture_args, tmp_path, capsys):
    out = tmp_path / "out"
    assert run(fixture_args("--strategy", "large-tables", out=out)) == 0
    ddl = (out / "recommendation.sql").read_text(encoding="utf-8")
    assert "ON customer" in ddl and "ON lineitem" in ddl


def test_out_dir_from_environment(fixture_args, tmp_path, capsys, monkeypatch):
    env_out = tmp_path / "env-out"
    monkeypatch.setenv("IDXMINER_OUT", str(env_out))
    args = fixture_args()
    del args[args.index("--out") + 1]
    args.remove("--out")
    assert run(args) == 0
    assert (env_out / "recommendation.sql").exists()


def test_verbose_prints_diagnostics_to_stderr(tmp_path, capsys):
    workload = tmp_path / "w.sql"
    workload.write_text("SELECT a FROM t WHERE ghost = 1;", encoding="utf-8")
    schema = tmp_path / "s.txt"
    schema.write_text("TABLE t\n a\n", encoding="utf-8")
    assert run([
        "--workload", str(workload),
        "--schema", str(schema),
        "--out", str(tmp_path / "out"),
        "-v",
    ]) == 0
    assert "ghost" in capsys.readouterr().err
