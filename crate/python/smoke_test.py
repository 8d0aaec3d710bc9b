"""Quick end-to-end check of the Python bindings."""

import math

import hyperflow_py as hf


def main():
    tri = hf.Triangulation.m12()
    report = tri.validate()
    assert report["passed"], report
    assert tri.tet_count == 12
    assert tri.hyper_edge_classes() == [3]

    # Symmetric decoration: ideal angles are pi/3.
    lengths = hf.equilateral_lengths([hf.ARCCOSH_2] * 3)
    phi, alpha = hf.extended_angles("3-1", lengths)
    assert all(abs(p - 0.5) < 1e-12 for p in phi[:3])
    assert abs(lengths[0] - math.log(math.sqrt(1.5))) < 1e-12

    x2, x4, x6 = hf.equilateral_inverse(2.0, 2.0, 2.0)
    assert abs(x2 - math.sqrt(1.5)) < 1e-12

    trace = tri.run_flow()
    assert trace.termination == "converged", trace.termination
    assert trace.k_inf < 1e-8
    assert trace.max_h_increase() <= 1e-12
    cert = tri.certify(trace.final_metric)
    assert cert["verdict"] == "pass", cert["summary"]
    print(f"limit l = {trace.final_state[0]:.12f} at t = {trace.final_time:.3f}: {cert['summary']}")

    try:
        hf.Triangulation.from_json("{")
    except ValueError as e:
        print(f"parse error raised as expected: {e}")
    else:
        raise AssertionError("malformed input accepted")


if __name__ == "__main__":
    main()
