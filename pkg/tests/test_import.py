def test_import():
    import logpic
    assert logpic.Multigraph is not None
    assert logpic.__version__
