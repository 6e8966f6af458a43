#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "fixtures.hpp"

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
    nlohmann::json doc() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = thinloop::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return fixtures::kDataDir + "/" + name; }

} // namespace

TEST_CASE("roundtrip on theta with a fusion map")
{
    const auto r = run({"roundtrip", "--complex", data("theta.json"), "--fusion", data("f12.json")});
    CHECK(r.code == 0);
    const auto doc = r.doc();
    CHECK(doc["verdict"] == true);
    CHECK(doc["fusion_first"]["verdict"] == true);
}

TEST_CASE("roundtrip on theta with a connection reports the witness gauge")
{
    const auto r = run({"roundtrip", "--complex", data("theta.json"), "--connection", data("t123.json")});
    CHECK(r.code == 0);
    const auto doc = r.doc();
    CHECK(doc["bundle_first"]["verdict"] == true);
    CHECK(doc["bundle_first"]["gauge"]["p"] == "0");
    CHECK(doc["bundle_first"]["gauge"]["q"] == "1");
}

TEST_CASE("holonomy in quiet mode")
{
    const auto r = run({"holonomy", "--complex", data("theta.json"), "--connection", data("t123.json"), "--loop", "e2+ e1-", "-q"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");
    const auto full = run({"holonomy", "--complex", data("theta.json"), "--connection", data("t123.json"), "--loop", "e2+ e1-"});
    CHECK(full.doc()["holonomy"] == "1");
}

TEST_CASE("validate reports an undeclared vertex")
{
    const auto r = run({"validate", "--complex", data("bad_vertex.json")});
    CHECK(r.code == 2);
    const auto diagnostics = r.doc()["complex"]["diagnostics"];
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0]["subject"] == "r");
}

TEST_CASE("validate rejects the planted table with a triple")
{
    const auto r = run({"validate", "--complex", data("theta.json"), "--table", data("nonfusion_table.json")});
    CHECK(r.code == 1);
    const auto table = r.doc()["table"];
    CHECK(table["fusion"] == false);
    CHECK_FALSE(table["violations"].empty());
}

TEST_CASE("regress and transgress invert each other on theta")
{
    const auto reg = run({"regress", "--complex", data("theta.json"), "--fusion", data("f12.json"), "-q"});
    CHECK(reg.code == 0);
    CHECK(reg.out == R"({"e1":"0","e2":"1","e3":"2"})" "\n");
    const auto tr = run({"transgress", "--complex", data("theta.json"), "--connection", data("t123.json"), "-q"});
    CHECK(tr.code == 0);
    CHECK(tr.out == R"({"e2":"1","e3":"2"})" "\n");
    const auto desc = run({"regress-descent", "--complex", data("theta.json"), "--fusion", data("f12.json"), "-q"});
    CHECK(desc.code == 0);
    CHECK(desc.out == reg.out);
}

TEST_CASE("a non-fusion table is refused by regression")
{
    const auto r = run({"regress", "--complex", data("theta.json"), "--table", data("nonfusion_table.json")});
    CHECK(r.code == 1);
    CHECK(r.err.find("not fusion") != std::string::npos);
}

TEST_CASE("curvature, iso and classify")
{
    const auto curv = run({"curvature", "--complex", data("theta_cell.json"), "--connection", data("t123.json")});
    CHECK(curv.code == 0);
    CHECK(curv.doc()["cells"]["c1"] == "1");
    CHECK(curv.doc()["flat"] == false);

    const auto iso = run({"iso", "--complex", data("theta.json"), "--connection", data("t123.json"), "--other", data("t230.json"), "-q"});
    CHECK(iso.code == 0);
    CHECK(iso.out == R"({"p":"0","q":"1"})" "\n");

    const auto cls = run({"classify", "--complex", data("theta.json"), "--connection", data("t123.json")});
    CHECK(cls.code == 0);
    CHECK(cls.doc()["classes_agree"] == true);
}

TEST_CASE("enumerate-loops lists theta's short loops")
{
    const auto r = run({"enumerate-loops", "--complex", data("theta.json"), "--max-len", "2"});
    CHECK(r.code == 0);
    CHECK(r.doc()["count"] == 7);
    CHECK(r.doc()["loops"][1] == "e1+ e2-");
    CHECK(run({"enumerate-loops", "--complex", data("theta.json"), "--max-len", "13"}).code == 2);
}

TEST_CASE("input errors exit with 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"holonomy", "--complex", data("theta.json")}).code == 2);
    CHECK(run({"holonomy", "--complex", data("missing.json"), "--connection", data("t123.json"), "--loop", "e1+"}).code == 2);
    const auto open = run({"holonomy", "--complex", data("theta.json"), "--connection", data("t123.json"), "--loop", "e1+"});
    CHECK(open.code == 2);
    CHECK_FALSE(open.err.empty());

    const auto dir = std::filesystem::temp_directory_path() / "thinloop_cli_test";
    std::filesystem::create_directories(dir);
    const auto broken = (dir / "broken.json").string();
    std::ofstream(broken) << "{\"vertices\": [\"p\",}";
    const auto r = run({"validate", "--complex", broken});
    CHECK(r.code == 2);
    CHECK(r.err.find("byte") != std::string::npos);
}

TEST_CASE("output is byte-identical across runs")
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"gen", "--seed", "42", "--group", "Zn:2xU1"},
             {"roundtrip", "--complex", data("theta.json"), "--fusion", data("f12.json"), "--connection", data("t123.json")},
             {"enumerate-loops", "--complex", data("theta_cell.json"), "--max-len", "4"},
         }) {
        const auto a = run(args);
        const auto b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
    CHECK(run({"gen", "--seed", "1"}).out != run({"gen", "--seed", "2"}).out);
}

TEST_CASE("generated instances feed back into the other commands")
{
    const auto dir = std::filesystem::temp_directory_path() / "thinloop_cli_test";
    std::filesystem::create_directories(dir);
    const auto doc = run({"gen", "--seed", "7"}).doc();
    const auto write = [&](const std::string& name, const nlohmann::json& j) {
        const auto path = (dir / name).string();
        std::ofstream(path) << j.dump();
        return path;
    };
    const auto complex = write("complex.json", doc["complex"]);
    const auto connection = write("connection.json", doc["connection"]);
    const auto fusion = write("fusion.json", doc["fusion"]);
    const auto r = run({"roundtrip", "--complex", complex, "--fusion", fusion, "--connection", connection});
    CHECK(r.code == 0);
    CHECK(r.doc()["verdict"] == true);

    const auto out_path = (dir / "out.json").string();
    CHECK(run({"-o", out_path, "transgress", "--complex", complex, "--connection", connection}).code == 0);
    std::ifstream in(out_path);
    CHECK(nlohmann::json::parse(in).contains("values"));
}
