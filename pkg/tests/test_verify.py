from connaug.instance import Instance
from connaug.verify import check_rooted, check_subset, local_conn


def test_local_conn_basics(cycle10):
    path = Instance(False, "edge", 3, (0, 2), 0, ((0, 1), (1, 2)), ())
    assert local_conn(path, path.jedges, 0, 2) == 1
    assert local_conn(cycle10, cycle10.jedges, 0, 3) == 2
    both = [(0, 2), (0, 1), (1, 2)]
    assert local_conn(path, both, 0, 2) == 2


def test_check_rooted(cycle10):
    assert check_rooted(cycle10, (), 0, 0) is None
    assert check_rooted(cycle10, cycle10.jedges, 0, 2) is None
    w = check_rooted(cycle10, cycle10.jedges, 0, 3)
    assert w is not None and w.deficiency == 1


def test_check_subset(cycle10):
    hub = Instance(False, "edge", 3, (0, 1), 0, ((0, 2), (1, 2)), ())
    assert check_subset(hub, hub.jedges, 1) is None
    assert check_subset(cycle10, cycle10.jedges, 2) is None
    w = check_subset(cycle10, cycle10.jedges, 3)
    assert (w.u, w.v, w.deficiency) == (0, 1, 1)


def test_with_j_flag(cycle10):
    assert check_subset(cycle10, (), 2, with_j=True) is None
