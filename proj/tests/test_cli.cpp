#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "orthoinv/cli.hpp"
#include "test_util.hpp"

using namespace orthoinv;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "orthoinv_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
    auto path = temp_dir() / name;
    std::ofstream file(path);
    file << content;
    return path;
}

template <class S>
fs::path write_form_file(const std::string& name, const Form<S>& f) {
    return write_file(name, form_to_string(f));
}

} // namespace

TEST_CASE("fingerprint command on an exact slice form") {
    Rng rng(51);
    auto c = random_coordinates_distinct_point(rng, SliceIndex::get(3, 4));
    auto path = write_form_file("slice.form", combine(c));

    auto result = run_cli({"fingerprint", path.string()});
    REQUIRE(result.exit_code == 0);
    auto doc = nlohmann::json::parse(result.out);
    CHECK(doc["fingerprint"]["mode"] == "exact");
    CHECK(doc["fingerprint"]["n"] == 3);
    CHECK(doc["fingerprint"]["degree"] == 4);
    CHECK(doc["fingerprint"]["q"].size() == 6);
    CHECK(doc["fingerprint"]["r0"].size() == 3);
    CHECK(doc["fingerprint"]["r"].size() == 2);
    CHECK(doc["fingerprint"]["genericity"]["non_generic"] == false);

    // byte-identical across runs
    auto again = run_cli({"fingerprint", path.string()});
    CHECK(again.out == result.out);
}

TEST_CASE("fingerprint command on a rotated form uses the float pipeline") {
    Rng rng(52);
    auto c = random_coordinates_distinct_point(rng, SliceIndex::get(3, 4));
    auto slice_path = write_form_file("orig.form", combine(c));
    auto rotated = apply_orthogonal(to_float(combine(c)), OrthogonalMatrix(random_orthogonal(rng, 3)));
    auto rotated_path = write_form_file("rotated.form", rotated);

    auto exact = run_cli({"fingerprint", slice_path.string()});
    auto moved = run_cli({"fingerprint", rotated_path.string()});
    REQUIRE(exact.exit_code == 0);
    REQUIRE(moved.exit_code == 0);
    auto exact_doc = nlohmann::json::parse(exact.out);
    auto moved_doc = nlohmann::json::parse(moved.out);
    CHECK(exact_doc["fingerprint"]["mode"] == "exact");
    CHECK(moved_doc["fingerprint"]["mode"] == "float");

    // same q-block within 1e-6 relative, against the exact values
    auto expected = to_float(fingerprint(c, InvariantVariant::repaired()));
    for (size_t i = 0; i < expected.q_block.size(); ++i) {
        double a = expected.q_block[i];
        double b = moved_doc["fingerprint"]["q"][i].get<double>();
        CHECK(std::abs(a - b) <= 1e-9 + 1e-6 * std::max(std::abs(a), std::abs(b)));
    }
}

TEST_CASE("fingerprint command rejects bad input") {
    auto odd = write_file("odd.form", "vars: 3\ndegree: 3\n1 1 1 1\n");
    auto result = run_cli({"fingerprint", odd.string()});
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("even degree required") != std::string::npos);

    auto small = write_file("small.form", "vars: 2\ndegree: 4\n1 2 2\n");
    CHECK(run_cli({"fingerprint", small.string()}).exit_code == 3);

    auto degree_two = write_file("deg2.form", "vars: 3\ndegree: 2\n1 2 0 0\n");
    CHECK(run_cli({"fingerprint", degree_two.string()}).exit_code == 3);

    CHECK(run_cli({"fingerprint", (temp_dir() / "missing.form").string()}).exit_code == 2);
    CHECK(run_cli({"nonsense"}).exit_code == 2);

    auto garbled = write_file("garbled.form", "vars: 3\ndegree: 4\n1 2 1\n");
    CHECK(run_cli({"fingerprint", garbled.string()}).exit_code == 2);

    // float file refused under --mode exact
    auto float_file = write_file("float.form", "vars: 3\ndegree: 4\n1.5 2 2 0\n");
    CHECK(run_cli({"fingerprint", float_file.string(), "--mode", "exact"}).exit_code == 2);
}

TEST_CASE("equivalent command verdicts") {
    Rng rng(53);
    auto c = random_coordinates_distinct_point(rng, SliceIndex::get(3, 4));
    auto s = combine(c);
    auto slice_path = write_form_file("eq_a.form", s);
    auto rotated = apply_orthogonal(to_float(s), OrthogonalMatrix(random_orthogonal(rng, 3)));
    auto rotated_path = write_form_file("eq_b.form", rotated);

    auto same = run_cli({"equivalent", slice_path.string(), rotated_path.string()});
    REQUIRE(same.exit_code == 0);
    auto same_doc = nlohmann::json::parse(same.out);
    CHECK(same_doc["verdict"] == "equivalent(generic)");
    CHECK(same_doc["max_rel_discrepancy"].get<double>() < 1e-6);

    // f vs 2f: fingerprint entries scale by mixed powers
    auto doubled_path = write_form_file("eq_c.form", s.scaled(Rational(2)));
    auto distinct = run_cli({"equivalent", slice_path.string(), doubled_path.string()});
    REQUIRE(distinct.exit_code == 0);
    CHECK(nlohmann::json::parse(distinct.out)["verdict"] == "distinct");

    // repeated quadratic eigenvalues: inconclusive
    auto degenerate = c;
    degenerate.c_point[0] = degenerate.c_point[1];
    auto degenerate_path = write_form_file("eq_d.form", combine(degenerate));
    auto inconclusive = run_cli({"equivalent", degenerate_path.string(), slice_path.string()});
    REQUIRE(inconclusive.exit_code == 0);
    CHECK(nlohmann::json::parse(inconclusive.out)["verdict"] == "inconclusive(non-generic)");

    // shape mismatch
    auto other_shape = write_file("eq_e.form", "vars: 4\ndegree: 4\n1 2 2 0 0\n");
    CHECK(run_cli({"equivalent", slice_path.string(), other_shape.string()}).exit_code == 2);
}

TEST_CASE("basis command") {
    auto out_path = temp_dir() / "basis34.txt";
    auto result = run_cli({"basis", "3", "4", "--out", out_path.string()});
    REQUIRE(result.exit_code == 0);
    auto summary = nlohmann::json::parse(result.out);
    CHECK(summary["count"] == 12);

    std::ifstream file(out_path);
    std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    CHECK(text.find("# m_1\n") != std::string::npos);
    CHECK(text.find("# m_1,2\n") != std::string::npos);
    CHECK(text.find("# m_mu mu=(2,2,0)\n") != std::string::npos);

    CHECK(run_cli({"basis", "2", "4"}).exit_code == 3);
    CHECK(run_cli({"basis", "3", "5"}).exit_code == 3);

    // deterministic output
    auto again = run_cli({"basis", "3", "4", "--out", out_path.string()});
    std::ifstream file2(out_path);
    std::string text2((std::istreambuf_iterator<char>(file2)), std::istreambuf_iterator<char>());
    CHECK(text == text2);
}

TEST_CASE("generators command") {
    auto out_path = temp_dir() / "gens34.txt";
    auto result = run_cli({"generators", "3", "4", "--out", out_path.string()});
    REQUIRE(result.exit_code == 0);
    auto summary = nlohmann::json::parse(result.out);
    CHECK(summary["count"] == 15);
    CHECK(summary["closed_form_count"] == 14);
    CHECK(summary["note"].get<std::string>().find("undercounts") != std::string::npos);

    std::ifstream file(out_path);
    std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    CHECK(text.find("# p_1\n") != std::string::npos);
    CHECK(text.find("# z\n") != std::string::npos);
    CHECK(text.find("# r(2+1+1)_t2\n") != std::string::npos);
}

TEST_CASE("oracle command") {
    auto result = run_cli({"oracle", "3", "4", "--trials", "10", "--seed", "7"});
    REQUIRE(result.exit_code == 0);
    auto doc = nlohmann::json::parse(result.out);
    CHECK(doc["violations"] == 0);
    CHECK(doc["invariance"]["violations"].empty());
    CHECK(doc["separation"]["failures"].empty());
    CHECK(doc["seed"] == 7);

    // full sweep at n = 6 is refused; the graph demo path is not
    CHECK(run_cli({"oracle", "6", "4", "--trials", "10"}).exit_code == 3);
    auto demo = run_cli({"oracle", "6", "4", "--graph-demo"});
    REQUIRE(demo.exit_code == 0);
    auto demo_doc = nlohmann::json::parse(demo.out);
    CHECK(demo_doc["graph_demo"]["w1_values_equal"] == true);
    CHECK(demo_doc["graph_demo"]["isomorphic"] == false);
}

TEST_CASE("tolerance environment overrides") {
    Rng rng(54);
    auto c = random_coordinates_distinct_point(rng, SliceIndex::get(3, 4));
    auto path = write_form_file("env.form", combine(c));

    setenv("ORTHOINV_ATOL", "1e-3", 1);
    auto result = run_cli({"equivalent", path.string(), path.string()});
    unsetenv("ORTHOINV_ATOL");
    REQUIRE(result.exit_code == 0);
    CHECK(nlohmann::json::parse(result.out)["atol"].get<double>() == 1e-3);

    auto flagged = run_cli({"equivalent", path.string(), path.string(), "--atol", "1e-5"});
    CHECK(nlohmann::json::parse(flagged.out)["atol"].get<double>() == 1e-5);
}
