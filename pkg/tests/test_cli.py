import random

from threesum.cli import main
from threesum.fileio import read_answers_file, read_integer_file, write_query_file, QueryBlock
from threesum.oracle import brute_force_all_numbers


def run(*argv):
    return main([str(a) for a in argv])


def test_gen_writes_deterministic_instance(tmp_path):
    d1, d2 = tmp_path / "i1", tmp_path / "i2"
    assert run("gen", "--n", 16, "--universe", 500, "--seed", 3, "--with-c", "--out", d1) == 0
    assert run("gen", "--n", 16, "--universe", 500, "--seed", 3, "--with-c", "--out", d2) == 0
    for name in ("A.txt", "B.txt", "C.txt"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()
    assert read_integer_file(d1 / "A.txt").size == 16


def test_gen_rejects_overfull_universe(tmp_path):
    assert run("gen", "--n", 10, "--universe", 4, "--out", tmp_path / "x") == 1


def test_preprocess_query_pipeline_matches_oracle(tmp_path):
    inst_dir = tmp_path / "inst"
    assert run("gen", "--n", 24, "--universe", 24**2, "--seed", 1, "--with-c", "--out", inst_dir) == 0
    a = read_integer_file(inst_dir / "A.txt").tolist()
    b = read_integer_file(inst_dir / "B.txt").tolist()
    c = read_integer_file(inst_dir / "C.txt").tolist()
    rng = random.Random(0)
    blocks = []
    for _ in range(5):
        aq = [v for v in a if rng.random() < 0.6]
        bq = [v for v in b if rng.random() < 0.6]
        cq = [v for v in c if rng.random() < 0.7] or [c[0]]
        blocks.append(QueryBlock(aq, bq, cq))
    qfile = tmp_path / "queries.txt"
    write_query_file(qfile, blocks)

    for algo in ("known-c", "unknown-c-rand", "unknown-c-det"):
        state = tmp_path / f"{algo}.state"
        assert run("preprocess", inst_dir, "--algo", algo, "--seed", 5, "--out", state) == 0
        answers = tmp_path / f"{algo}.answers"
        assert run("query", state, qfile, "--out", answers) == 0
        groups = read_answers_file(answers)
        assert len(groups) == len(blocks)
        for blk, got in zip(blocks, groups):
            want = brute_force_all_numbers(blk.a, blk.b, blk.c)
            assert got == [(e.value, int(e.hit), e.count) for e in want.entries]


def test_preprocess_toy_forced_modulus(tmp_path, capsys):
    inst_dir = tmp_path / "toy"
    inst_dir.mkdir()
    (inst_dir / "A.txt").write_text("1\n3\n")
    (inst_dir / "B.txt").write_text("2\n4\n")
    (inst_dir / "C.txt").write_text("5\n8\n")
    state = tmp_path / "toy.state"
    assert run("preprocess", inst_dir, "--algo", "known-c", "--force-modulus", 5, "--out", state) == 0
    out = capsys.readouterr().out
    assert "|F|=1" in out

    qfile = tmp_path / "q.txt"
    write_query_file(qfile, [QueryBlock([1, 3], [2, 4], [5, 8])])
    answers = tmp_path / "a.txt"
    assert run("query", state, qfile, "--out", answers) == 0
    assert answers.read_text() == "5 1 2\n8 0 0\n"


def test_preprocess_requires_c_for_known_c(tmp_path):
    inst_dir = tmp_path / "nc"
    inst_dir.mkdir()
    (inst_dir / "A.txt").write_text("1\n")
    (inst_dir / "B.txt").write_text("2\n")
    assert run("preprocess", inst_dir, "--algo", "known-c", "--out", tmp_path / "s") == 1


def test_preprocess_rejects_composite_forced_modulus(tmp_path):
    inst_dir = tmp_path / "inst"
    assert run("gen", "--n", 8, "--universe", 64, "--seed", 0, "--with-c", "--out", inst_dir) == 0
    assert (
        run("preprocess", inst_dir, "--algo", "known-c", "--force-modulus", 15, "--out", tmp_path / "s")
        == 1
    )


def test_deterministic_state_files_are_byte_identical(tmp_path):
    inst_dir = tmp_path / "inst"
    assert run("gen", "--n", 32, "--universe", 32, "--mode", "adversarial-progression",
               "--seed", 2, "--out", inst_dir) == 0
    s1, s2 = tmp_path / "s1", tmp_path / "s2"
    assert run("preprocess", inst_dir, "--algo", "unknown-c-det", "--out", s1) == 0
    assert run("preprocess", inst_dir, "--algo", "unknown-c-det", "--out", s2) == 0
    assert s1.read_bytes() == s2.read_bytes()


def test_memory_budget_exit_code(tmp_path):
    inst_dir = tmp_path / "inst"
    assert run("gen", "--n", 64, "--universe", 64**2, "--seed", 1, "--out", inst_dir) == 0
    code = run("preprocess", inst_dir, "--algo", "unknown-c-rand", "--memory-budget", 1000,
               "--out", tmp_path / "s")
    assert code == 3


def test_verify_clean_and_faulty(tmp_path):
    assert run("verify", "--algos", "unknown-c-det", "--n", 12, "--trials", 6, "--seed", 2) == 0
    assert run("verify", "--algos", "known-c", "--n", 8, "--trials", 4, "--seed", 2, "--inject-fault") == 2


def test_bench_csv(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    assert run("bench", "--algo", "unknown-c-det", "--sizes", "8,16", "--trials", 2,
               "--seed", 1, "--out", out) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,preprocess_ms,query_ms_mean,convolution_length,fp_scan_mean,restarts,moduli_count"
    assert len(lines) == 3


def test_hundred_query_blocks_keep_order(tmp_path):
    inst_dir = tmp_path / "inst"
    assert run("gen", "--n", 12, "--universe", 144, "--seed", 4, "--with-c", "--out", inst_dir) == 0
    c = read_integer_file(inst_dir / "C.txt").tolist()
    rng = random.Random(1)
    blocks = [
        QueryBlock([rng.randrange(145)], [rng.randrange(145)], [c[i % len(c)], c[(i + 3) % len(c)]])
        for i in range(100)
    ]
    # arbitrary A'/B' values are not subsets; use the unknown-C engine which allows any targets
    blocks = [QueryBlock([], [], blk.c) for blk in blocks]
    qfile = tmp_path / "q100.txt"
    write_query_file(qfile, blocks)
    state = tmp_path / "s"
    assert run("preprocess", inst_dir, "--algo", "unknown-c-rand", "--out", state) == 0
    answers = tmp_path / "a"
    assert run("query", state, qfile, "--out", answers) == 0
    groups = read_answers_file(answers)
    assert len(groups) == 100
    for blk, group in zip(blocks, groups):
        assert [g[0] for g in group] == list(dict.fromkeys(blk.c))


def test_query_parse_error_exit_code(tmp_path):
    inst_dir = tmp_path / "inst"
    assert run("gen", "--n", 8, "--universe", 64, "--seed", 0, "--with-c", "--out", inst_dir) == 0
    state = tmp_path / "s"
    assert run("preprocess", inst_dir, "--algo", "known-c", "--out", state) == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("A'\noops\n")
    assert run("query", state, bad, "--out", tmp_path / "a") == 1
