#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>

#include "nlwrad/core/error.hpp"
#include "nlwrad/experiments/convergence.hpp"
#include "nlwrad/experiments/csv.hpp"
#include "nlwrad/experiments/data_family.hpp"
#include "nlwrad/experiments/presets.hpp"
#include "nlwrad/experiments/runner.hpp"
#include "nlwrad/functionals/energy.hpp"
#include "support.hpp"

using namespace nlwrad;
using nlohmann::json;

namespace {

// Small run touching every table.
ExperimentConfig small_config() {
    ExperimentConfig c;
    c.name = "small";
    c.d = 3;
    c.p = 2.8;
    c.dr = 1.0 / 32;
    c.t_end = 24;
    c.checkpoint_every = 0.5;
    c.kappa = {0.4};
    c.identity_windows = {{2.0, -3.0, 3.0}};
    c.corollary_windows = {{2.0, 1.0}};
    c.q_series = true;
    c.flux_check = true;
    c.radiation = true;
    c.variation = {true, -2.0, 2.0, 1.0, {4.0, 8.0, 12.0, 16.0}, 24.0};
    c.defect = {{4.0, 8.0}, 20.0};
    return c;
}

}  // namespace

TEST_CASE("csv round trip is bit exact") {
    const auto dir = testing::scratch_dir("csv");
    CsvTable t;
    t.columns = {"a", "b"};
    t.add({0.1, 1.0 / 3.0});
    t.add({-0.0, std::numeric_limits<double>::denorm_min()});
    t.add({1e300, -std::nextafter(1.0, 2.0)});
    write_csv((dir / "t.csv").string(), t);
    const auto back = read_csv((dir / "t.csv").string());
    REQUIRE(back.columns == t.columns);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(std::signbit(back.rows[i][j]) == std::signbit(t.rows[i][j]));
    CHECK(back.rows == t.rows);
    CHECK(format_double(0.1) == "0.10000000000000001");

    std::ofstream(dir / "bad.csv") << "a,b\n1,x\n";
    CHECK_THROWS_AS(read_csv((dir / "bad.csv").string()), InvalidParameter);
    std::ofstream(dir / "short.csv") << "a,b\n1\n";
    CHECK_THROWS_AS(read_csv((dir / "short.csv").string()), InvalidParameter);
    CHECK_THROWS_AS(t.add({1.0}), InvalidParameter);
    CHECK_THROWS_AS(t.index("c"), InvalidParameter);
}

TEST_CASE("config json round trip and rejection") {
    const auto c = small_config();
    const json j = config_to_json(c);
    CHECK(config_to_json(config_from_json(j)) == j);

    json unknown = j;
    unknown["grid"]["spacing"] = 0.1;
    CHECK_THROWS_AS(config_from_json(unknown), InvalidParameter);
    json wrong = j;
    wrong["d"] = "three";
    CHECK_THROWS_AS(config_from_json(wrong), InvalidParameter);
    json window = j;
    window["identity_windows"][0]["t2"] = 100.0;
    CHECK_THROWS_AS(config_from_json(window), InvalidParameter);
    json family = j;
    family["data"]["kind"] = "sech";
    CHECK_THROWS_AS(config_from_json(family), InvalidParameter);

    const auto dir = testing::scratch_dir("config");
    std::ofstream(dir / "broken.json") << "{ \"d\": 3, ";
    CHECK_THROWS_AS(load_config((dir / "broken.json").string()), InvalidParameter);
    CHECK_THROWS_AS(load_config((dir / "missing.json").string()), InvalidParameter);
}

TEST_CASE("presets") {
    for (const auto& name : preset_names()) {
        const auto c = preset(name);
        CHECK_NOTHROW(validate(c));
        CHECK(c.name == name);
    }
    CHECK_THROWS_WITH_AS(preset("nope"), doctest::Contains("scatter-d3"), InvalidParameter);

    const auto m4 = preset("morawetz-d4");
    CHECK(m4.d == 4);
    CHECK(m4.p == 2.2);
    CHECK(make_params(m4.d, m4.p).in_theorem11_range);
    CHECK(m4.corollary_windows.size() == 10);

    const auto s3 = preset("scatter-d3");
    CHECK(s3.p > std::sqrt(7.0));
    CHECK(make_params(s3.d, s3.p).in_scattering_range);

    const auto c3 = preset("theorem11c-d3");
    const auto P = make_params(c3.d, c3.p);
    for (double k : c3.kappa) CHECK(k < P.kappa_max);
    CHECK(c3.data.kind == DataKind::compact_bump);
}

TEST_CASE("data families") {
    const auto P = make_params(3, 3.0);
    CHECK(polynomial_tail_kappa_limit(2.0, P) == doctest::Approx(3.0));
    CHECK(polynomial_tail_kappa_limit(4.0, P) == doctest::Approx(7.0));
    CHECK(polynomial_tail_kappa_limit(1.0, make_params(3, 1.5)) == doctest::Approx(-0.5));

    DataSpec tail;
    tail.kind = DataKind::polynomial_tail;
    tail.tail_exponent = 2.0;
    CHECK(weighted_energy_finite(tail, P, 2.0));
    CHECK_FALSE(weighted_energy_finite(tail, P, 4.0));
    DataSpec bump;
    bump.kind = DataKind::compact_bump;
    CHECK(weighted_energy_finite(bump, P, 50.0));

    // partial E_κ integrals settle below the limit and keep growing above it
    const auto data = make_initial_data(tail, P);
    auto partial = [&](double R, double kappa) {
        const auto G = RadialGrid::covering(1.0 / 16, R);
        return energy(init_from_profile(data.u0, data.u1, G, P), kappa).e_kappa;
    };
    CHECK(partial(1000, 2.0) / partial(100, 2.0) < 1.05);
    CHECK(partial(1000, 4.0) / partial(100, 4.0) > 5.0);

    DataSpec pulse;
    pulse.kind = DataKind::outgoing_pulse;
    pulse.center = 2.0;
    CHECK_THROWS_AS(make_initial_data(pulse, P), InvalidParameter);
    pulse.center = 10.0;
    const auto pd = make_initial_data(pulse, P);
    CHECK_FALSE(pd.time_symmetric);
    CHECK(pd.u1.value(10.5) == doctest::Approx(-pd.u0.derivative(10.5) - pd.u0.value(10.5) / 10.5));

    const auto g = make_initial_data(DataSpec{}, P);
    CHECK(g.time_symmetric);
    CHECK(g.u0.value(0.0) == 1.0);
    CHECK(g.u0.value(g.support + 0.1) == 0.0);
    CHECK(g.u0.value(g.support - 1e-6) <= 1e-17);
}

TEST_CASE("sample file loader") {
    const auto dir = testing::scratch_dir("samples");
    std::ofstream(dir / "u0.txt") << "# r u\n0 1\n1 0.5\n2 0\n";
    const auto pts = read_samples((dir / "u0.txt").string());
    CHECK(pts.size() == 3);
    std::ofstream(dir / "bad.txt") << "0 1\n0 2\n";
    CHECK_THROWS_AS(read_samples((dir / "bad.txt").string()), InvalidParameter);
    std::ofstream(dir / "junk.txt") << "0 one\n";
    CHECK_THROWS_AS(read_samples((dir / "junk.txt").string()), InvalidParameter);

    DataSpec spec;
    spec.kind = DataKind::file;
    spec.file = (dir / "u0.txt").string();
    const auto data = make_initial_data(spec, make_params(3, 2.5));
    CHECK(data.u0.value(0.5) == doctest::Approx(0.75));
    CHECK(data.u0.value(3.0) == 0.0);
    CHECK(data.support == doctest::Approx(2.0));
}

TEST_CASE("zero data pass every check with all-zero series") {
    auto c = small_config();
    c.data.amplitude = 0.0;
    const auto r = execute(c);
    const auto s = summarize(r);
    CHECK(s["passed"].get<bool>());
    for (const auto& [name, v] : s["checks"].items()) CHECK_MESSAGE(v.get<bool>(), name);
    for (double q : r.q_series.column("Q")) REQUIRE(q == 0.0);
    for (double e : r.energy.column("total")) REQUIRE(e == 0.0);
    for (double g : r.radiation.column("g_plus")) REQUIRE(g == 0.0);
}

TEST_CASE("runs are deterministic and artifacts round trip") {
    const auto c = small_config();
    const auto a = testing::scratch_dir("det_a"), b = testing::scratch_dir("det_b");
    const auto ra = run_experiment(c, a.string());
    const auto rb = run_experiment(c, b.string());
    for (const char* f : {"energy.csv", "q_series.csv", "morawetz.csv", "identity.csv", "radiation.csv",
                          "defect.csv", "flux.csv", "variation.csv"}) {
        const auto bytes = testing::slurp(a / f);
        CHECK_MESSAGE(!bytes.empty(), f);
        CHECK_MESSAGE(bytes == testing::slurp(b / f), f);
    }
    json sa = ra.summary, sb = rb.summary;
    sa.erase("runtime_seconds");
    sb.erase("runtime_seconds");
    CHECK(sa == sb);

    const json written = json::parse(testing::slurp(a / "summary.json"));
    CHECK(summarize(read_artifacts(a.string())) == written);
    CHECK(written == ra.summary);
    for (const char* key : {"energy", "identity", "corollary", "flux", "decay", "variation", "defect", "radiation"})
        CHECK_MESSAGE(written.contains(key), key);
}

TEST_CASE("runner input errors") {
    auto c = small_config();
    c.backward = Backward::none;
    CHECK_THROWS_AS(execute(c), InvalidParameter);
    c = small_config();
    c.data.kind = DataKind::polynomial_tail;
    CHECK_THROWS_AS(execute(c), InvalidParameter);
    c.r_max = 40.0;
    c.radiation = false;
    c.variation.enabled = false;
    c.defect = {};
    CHECK_NOTHROW(execute(c));
    c = small_config();
    c.data.kind = DataKind::outgoing_pulse;
    c.data.center = 10.0;
    c.backward = Backward::symmetric;
    CHECK_THROWS_AS(execute(c), InvalidParameter);
}

TEST_CASE("convergence study") {
    auto c = preset("linear-d3");
    c.dr = 1.0 / 16;
    c.radiation = false;
    c.t_end = 8;
    CHECK_THROWS_AS(convergence_study(c, 1), InvalidParameter);
    const auto table = convergence_study(c, 3);
    CHECK(table.levels.size() == 3);
    CHECK(table.order("energy_drift").exact);
    CHECK(table.order("self_difference").exact);
    CHECK(to_json(table)["orders"]["energy_drift"]["exact"].get<bool>());

    auto n = preset("energy-d3");
    n.dr = 1.0 / 16;
    n.t_end = 10;
    const auto nl = convergence_study(n, 3);
    for (double o : nl.order("energy_drift").orders) CHECK((o >= 1.8 && o <= 2.2));
    CHECK_FALSE(nl.order("self_difference").exact);
    CHECK_THROWS_AS(nl.order("morawetz_residual"), InvalidParameter);
}
