from talktriage.cli import make_eval_scorer
from talktriage.serve import main as serve_main


def test_serve_refuses_to_start_without_tokens(tmp_path, capsys):
    config = tmp_path / "bare.ini"
    config.write_text("[page:Talk:Foo]\npoll_interval = 60\n")
    code = serve_main(["--config", str(config), "--store-dir", str(tmp_path / "s")])
    assert code == 1
    assert "tokens" in capsys.readouterr().err


def test_serve_rejects_bad_thresholds(tmp_path, capsys):
    config = tmp_path / "bad.ini"
    config.write_text(
        "[service]\ntokens = t:mod\nrisk_elevated = 0.9\nrisk_high = 0.2\n"
    )
    code = serve_main(["--config", str(config), "--store-dir", str(tmp_path / "s")])
    assert code == 1
    assert "startup failure" in capsys.readouterr().err


def test_constant_scorer_accepts_both_spellings():
    assert make_eval_scorer("constant:0.25").value == 0.25
    assert make_eval_scorer("constant-0.25").value == 0.25
