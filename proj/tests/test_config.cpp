#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qdmol/cache.hpp"
#include "qdmol/config.hpp"
#include "qdmol/errors.hpp"
#include "qdmol/sweep.hpp"

using namespace qdmol;

TEST_CASE("defaults from an empty config") {
    const RunConfig cfg = parse_config_text("");
    CHECK(cfg.mat.effective_mass_ratio == doctest::Approx(0.067));
    CHECK(cfg.mat.dielectric_const == doctest::Approx(13.1));
    CHECK(cfg.pot.a == doctest::Approx(15.0)); // 30 nm separation
    CHECK(cfg.pot.Vb == doctest::Approx(30.0));
    REQUIRE(cfg.B_grid.size() == 17); // 0..8 step 0.5
    CHECK(cfg.B_grid.front() == 0.0);
    CHECK(cfg.B_grid.back() == doctest::Approx(8.0));
    CHECK(cfg.basis_level == BasisLevel::sp);
    CHECK(cfg.solver == SolverKind::mo);
}

TEST_CASE("section and key parsing") {
    const std::string text = R"(
# comment
[potential]
V0_meV = -48.5
a_nm = 20
Vb_meV = 18.17

[field]
B_T = 2.5
include_zeeman = true

[run]
B_grid = 0,1,2
basis_level = hm
jobs = 4
)";
    const RunConfig cfg = parse_config_text(text);
    CHECK(cfg.pot.V0 == doctest::Approx(-48.5));
    CHECK(cfg.pot.a == doctest::Approx(20.0));
    CHECK(cfg.field.B == doctest::Approx(2.5));
    CHECK(cfg.field.include_zeeman);
    CHECK(cfg.B_grid.size() == 3);
    CHECK(cfg.basis_level == BasisLevel::hm);
    CHECK(cfg.jobs == 4);
}

TEST_CASE("config errors carry the offending line") {
    try {
        parse_config_text("[potential]\nbogus_key = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("[nosuch]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[field]\nB_T = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("key_outside = 1\n"), ConfigError);
    // solver/basis validity: hl requires the s-only basis
    CHECK_THROWS_AS(
        parse_config_text("[run]\nsolver = hl\nbasis_level = sp\n"),
        ConfigError);
    CHECK_THROWS_AS(parse_config_text("[run]\nVb_grid = 20,25\n"
                                      "barrier_targets = 3.38\n"),
                    ConfigError);
}

TEST_CASE("grid parsing") {
    CHECK(parse_grid("0:8:0.5").size() == 17);
    CHECK(parse_grid("1,2,4").size() == 3);
    CHECK(parse_grid("42").size() == 1);
    CHECK_THROWS_AS(parse_grid("1:2:-1"), ConfigError);
    CHECK_THROWS_AS(parse_grid(""), ConfigError);
}

TEST_CASE("flag overrides win with a warning") {
    RunConfig cfg = parse_config_text("[run]\nseed = 7\njobs = 3\n");
    CliOverrides ov;
    ov.seed = 11;
    ov.jobs = 3;
    std::vector<std::string> warnings;
    cfg = apply_overrides(cfg, ov, &warnings);
    CHECK(cfg.seed == 11);
    CHECK(cfg.jobs == 3);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("seed") != std::string::npos);
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("tensor cache roundtrip") {
    const std::string dir = "cache_test_dir";
    std::filesystem::remove_all(dir);
    MoInput in;
    in.mat = MaterialParams::gaas();
    in.pot.a = 15.0;
    in.pot.Vb = 25.0;
    in.pot.V0 = -50.0;
    in.level = BasisLevel::hm;
    in.hbar_omega0 = 9.0;
    in.half_sep = 13.0;
    const MoIntegrals fresh = cached_mo_integrals(in, dir);
    const std::string key = tensor_cache_key(in);
    CHECK(load_cached_tensor(dir, key).has_value());
    const MoIntegrals reloaded = cached_mo_integrals(in, dir);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    CHECK(std::abs(fresh.coulomb(i, j, k, l) -
                                   reloaded.coulomb(i, j, k, l)) == 0.0);
    // different physics, different key
    MoInput other = in;
    other.field.B = 1.0;
    CHECK(tensor_cache_key(other) != key);
    std::filesystem::remove_all(dir);
}

TEST_CASE("csv runs are byte identical and numerically labeled") {
    RunConfig cfg = default_config();
    cfg.solver = SolverKind::mo;
    cfg.basis_level = BasisLevel::hm;
    cfg.B_grid = {0.0, 1.0};
    cfg.Vb_grid = {20.0};
    cfg.barrier_targets = {3.38};
    cfg.distance_grid = {30.0};
    cfg.output_path = "sweep_test_dir";
    std::filesystem::remove_all(cfg.output_path);
    const SweepOutcome first = run_sweep(cfg, "unit");
    REQUIRE(first.exit_code == 0);
    std::stringstream s1;
    s1 << std::ifstream(first.files.front()).rdbuf();
    const SweepOutcome second = run_sweep(cfg, "unit");
    std::stringstream s2;
    s2 << std::ifstream(second.files.front()).rdbuf();
    CHECK(s1.str() == s2.str());
    // header + 2 rows; header names the energy columns
    CHECK(s1.str().rfind("B_T,Vb_meV,distance_nm,E1_meV", 0) == 0);
    int lines = 0;
    for (char c : s1.str())
        if (c == '\n') ++lines;
    CHECK(lines == 3);
    std::filesystem::remove_all(cfg.output_path);
}

TEST_CASE("presets cover the standard runs") {
    const RunConfig base = default_config();
    for (const auto& name : preset_names()) {
        if (name == "fig2" || name == "fig3") continue; // uhf presets calibrate eagerly
        const auto runs = preset_runs(name, base);
        CHECK(!runs.empty());
    }
    const auto t1 = preset_runs("table1", base);
    REQUIRE(t1.size() == 1);
    CHECK(t1[0].first.Vb_grid.size() == 3);
    CHECK(preset_is_variational(t1[0].second));
    CHECK_THROWS_AS(preset_runs("fig99", base), ConfigError);
}
