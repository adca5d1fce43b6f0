import orbicalc


def reflection_germ():
    return {
        "source": {"dim": 2, "generators": [[["1", "0"], ["0", "-1"]]]},
        "target": {"dim": 1},
        "lift": [[{"coef": "1", "exps": [1, 0]}]],
    }


def test_reflection_line_projection():
    report, code = orbicalc.analyze(reflection_germ())
    assert code == orbicalc.EXIT_OK
    assert report["result"]["projection"]["a_x"] == [["0", "0"], ["0", "1"]]
    assert report["result"]["preimages"][0]["gamma_s_order"] == 2


def test_square_lift_is_not_regular():
    s = {
        "source": {"dim": 1, "generators": [[["-1"]]]},
        "target": {"dim": 1},
        "lift": [[{"coef": "1", "exps": [2]}]],
        "p": ["0"],
        "preimage_lifts": [["0"]],
    }
    report, code = orbicalc.analyze(s)
    assert code == orbicalc.EXIT_CHECK
    assert report["error"]["code"] == "not_regular"


def test_bad_rational_reports_path():
    s = reflection_germ()
    s["lift"][0][0]["coef"] = "1/0"
    report, code = orbicalc.analyze(s)
    assert code == orbicalc.EXIT_INPUT
    assert report["error"]["path"] == "/lift/0/0/coef"


def test_sard_is_deterministic():
    s = {
        "source": {"dim": 1, "generators": [[["-1"]]]},
        "target": {"dim": 1},
        "lift": [[{"coef": "1", "exps": [2]}]],
    }
    a, _ = orbicalc.sard(s, samples=2000, seed=5, box=[(-2.0, 2.0)])
    b, _ = orbicalc.sard(s, samples=2000, seed=5, box=[(-2.0, 2.0)])
    assert a == b
    assert a["result"]["regular_fraction"] >= 0.999


def test_c3_obstruction():
    s = {"source": {"dim": 2, "generators": [[["0", "-1"], ["1", "-1"]]]}, "target": {"dim": 1}}
    report, code = orbicalc.obstruct(s)
    assert code == 0
    assert report["result"]["verdict"] == "impossible"
    assert report["result"]["reason"] == "b"


def test_corpus_round_trip():
    names = orbicalc.corpus_names()
    assert "disk-cone-product" in names
    command, scenario = orbicalc.corpus_scenario("disk-cone-product")
    assert command == "retraction"
    report, code = orbicalc.retraction(scenario)
    assert code == 0 and report["result"]["contradiction"]
    summary, ok = orbicalc.corpus_run()
    assert ok and summary["passed"] == summary["total"]
    _, ok = orbicalc.corpus_run(corrupt=True)
    assert not ok
