#include "hia/export.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>

using namespace hia;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const char* env = std::getenv("HIA_SCRATCH");
    fs::path base = env ? fs::path(env) : fs::temp_directory_path() / "hia_scratch";
    fs::path dir = base / "export" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

AntennaConfig cfg(int m1, int m2, int n1, int n2) {
    return AntennaConfig{m1, m2, n1, n2, false};
}

}

TEST_CASE("rationals serialize as reduced pairs") {
    CHECK(rational_json(Rational(6, 4)) == nlohmann::json::array({3, 2}));
    CHECK(rational_json(Rational(-2)) == nlohmann::json::array({-2, 1}));
    CHECK(rational_from_json(nlohmann::json::array({9, 5})) == Rational(9, 5));
    CHECK_THROWS_AS(rational_from_json(nlohmann::json::array({6, 4})), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_json(nlohmann::json::array({1, 0})), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_json(nlohmann::json::array({1, -2})), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_json(nlohmann::json("1/2")), std::invalid_argument);
}

TEST_CASE("region documents round trip") {
    for (const auto& c : canonical_sweep(4)) {
        for (auto m : all_region_models) {
            auto r = region(c, m);
            ExportDocument doc{r, summarize_relations(c), std::nullopt};
            auto j = nlohmann::json::parse(document_text(doc));
            CHECK(same_region(region_from_json(j), r));
        }
    }
}

TEST_CASE("document layout") {
    auto c = cfg(4, 5, 3, 2);
    auto rep = monte_carlo(c, RegionModel::Hybrid1, SchemeCorner::Primary, 3, 42);
    ExportDocument doc{region(c, RegionModel::Hybrid1), summarize_relations(c), SimSummary{rep, "primary", 42, "vertex"}};
    auto j = to_json(doc);
    CHECK(j["config"]["m2"] == 5);
    CHECK(j["model"] == "hybrid1");
    CHECK(j["bounds"].size() == 4);
    CHECK(j["vertices"][2] == nlohmann::json::parse("[[9,5],[2,1]]"));
    CHECK(j["relations"]["case"] == "A.I.3b");
    CHECK(j["relations"]["hybrid1_subcase"] == "II");
    CHECK(j["relations"]["summary"] == "D^d ⊂ D^h1 ⊂ D^i; D^d ⊂ D^h2 ⊂ D^i");
    CHECK(j["sim"]["successes"] == 3);
    CHECK(j["sim"]["achieved_dof"] == nlohmann::json::parse("[[9,5],[2,1]]"));
    CHECK(j["sim"]["seed"] == 42);
}

TEST_CASE("malformed documents are rejected") {
    auto j = to_json(ExportDocument{region(cfg(2, 2, 1, 1), RegionModel::Delayed), std::nullopt, std::nullopt});
    auto bad = j;
    bad.erase("bounds");
    CHECK_THROWS_AS(region_from_json(bad), std::invalid_argument);
    bad = j;
    bad["model"] = "hybrid3";
    CHECK_THROWS_AS(region_from_json(bad), std::invalid_argument);
    bad = j;
    bad["vertices"][0] = nlohmann::json::array({1});
    CHECK_THROWS_AS(region_from_json(bad), std::invalid_argument);
}

TEST_CASE("text listing round trips") {
    for (const auto& c : canonical_sweep(4)) {
        for (auto m : all_region_models) {
            auto r = region(c, m);
            CHECK(same_region(parse_region_listing(region_listing(r)), r));
        }
    }
    CHECK_THROWS_AS(parse_region_listing("vertex (0, 0)\n"), std::invalid_argument);
}

TEST_CASE("sweep export writes documents and index") {
    auto dir = scratch("sweep2");
    auto rows = export_sweep(2, dir);
    CHECK(rows == 48);
    auto index = slurp(dir / "index.csv");
    CHECK(index.rfind("config,model,case,vertex-count,relation-string\n", 0) == 0);
    CHECK(std::count(index.begin(), index.end(), '\n') == 49);
    CHECK(index.find("\"2,2,1,1\",hybrid1,") != std::string::npos);
    CHECK(fs::exists(dir / "2-2-1-1_hybrid1.json"));

    auto j = nlohmann::json::parse(slurp(dir / "2-2-1-1_hybrid1.json"));
    CHECK(same_region(region_from_json(j), region(cfg(2, 2, 1, 1), RegionModel::Hybrid1)));

    // Identical bytes on a rerun.
    auto again = scratch("sweep2_again");
    export_sweep(2, again);
    CHECK(slurp(again / "index.csv") == index);
    CHECK(slurp(again / "2-2-1-1_hybrid1.json") == slurp(dir / "2-2-1-1_hybrid1.json"));
}

TEST_CASE("unwritable targets raise export errors") {
    auto dir = scratch("blocked");
    write_text(dir / "file", "x");
    CHECK_THROWS_AS(export_sweep(1, dir / "file"), ExportError);
    CHECK_THROWS_AS(write_text(dir / "missing" / "a.json", "{}"), ExportError);
    CHECK(export_file_name(cfg(4, 5, 3, 2), RegionModel::Hybrid1) == "4-5-3-2_hybrid1.json");
}
