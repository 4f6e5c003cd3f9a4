#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "syllogistic/cli.hpp"

namespace {

namespace fs = std::filesystem;

class KbFile {
public:
    explicit KbFile(const std::string& text) {
        static int counter = 0;
        path_ = fs::temp_directory_path() / ("syllo_test_" + std::to_string(::getpid()) + "_" +
                                             std::to_string(counter++) + ".kb");
        std::ofstream(path_) << text;
    }
    ~KbFile() { fs::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    fs::path path_;
};

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = syl::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

} // namespace

TEST(Decide, Verdicts) {
    KbFile bad("A a b\nO a b\n");
    auto r = run({"decide", bad.path()});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "contradictory: A a b, O a b\n");

    KbFile good("A a b\nE b c\n");
    r = run({"decide", good.path()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "consistent\n");

    KbFile plain("E c c\n");
    r = run({"decide", plain.path()});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "plainly contradictory: E c c\n");
}

TEST(Decide, Json) {
    KbFile bad("A a b\nO a b\n");
    auto r = run({"decide", bad.path(), "--format", "json"});
    EXPECT_EQ(r.code, 1);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdict"], "contradictory");
    EXPECT_EQ(j["witness"], (nlohmann::json{"A a b", "O a b"}));
}

TEST(Entails, GWithDerivation) {
    KbFile kb("A a b\nE b c\n");
    auto r = run({"entails", kb.path(), "E a c", "--system", "g"});
    EXPECT_EQ(r.code, 0);
    auto out = lines(r.out);
    ASSERT_GE(out.size(), 4u);
    EXPECT_EQ(out[0], "yes");
    EXPECT_NE(out.back().find("E a c"), std::string::npos);
    EXPECT_NE(r.out.find("[Celarent"), std::string::npos);
}

TEST(Entails, NegativeAnswer) {
    KbFile kb("A a b\n");
    auto r = run({"entails", kb.path(), "A b a"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "no\n");
}

TEST(Entails, PreconditionViolation) {
    KbFile kb("A a b\nE c c\n");
    auto r = run({"entails", kb.path(), "A a b"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("E c c"), std::string::npos);
    // derive performs no precondition check.
    EXPECT_EQ(run({"derive", kb.path(), "A a b"}).code, 0);
}

TEST(Derive, Lines) {
    KbFile kb("A a b\nA b c\n");
    auto r = run({"derive", kb.path(), "A a c"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(lines(r.out), (std::vector<std::string>{"1. A a b  [assumption]", "2. A b c  [assumption]",
                                                      "3. A a c  [Barbara 1,2]"}));
    r = run({"derive", kb.path(), "A c a"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "none\n");
}

TEST(Closure, TextAndJson) {
    KbFile kb("A a b\n");
    auto r = run({"closure", kb.path()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(lines(r.out), (std::vector<std::string>{"A a a", "A a b", "A b b", "I a a", "I b a", "I b b"}));
    r = run({"closure", kb.path(), "--format", "json"});
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["terms"], (nlohmann::json{"a", "b"}));
    EXPECT_EQ(j["A"].size(), 3u);
    EXPECT_TRUE(j["E"].empty());
}

TEST(Model, Leibniz) {
    KbFile kb("A a b\n");
    auto r = run({"model", kb.path(), "--kind", "leibniz"});
    EXPECT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["mu"]["a"], (nlohmann::json{6, 1}));
    EXPECT_EQ(j["mu"]["b"], (nlohmann::json{3, 1}));
}

TEST(Model, VennPdAndInconsistent) {
    KbFile kb("I a b\nE b c\n");
    auto v = nlohmann::json::parse(run({"model", kb.path(), "--kind", "venn"}).out);
    EXPECT_TRUE(v.contains("sets"));
    EXPECT_EQ(v["mu"].size(), 3u);
    auto p = nlohmann::json::parse(run({"model", kb.path(), "--kind", "pd"}).out);
    EXPECT_TRUE(p.contains("mu"));
    KbFile bad("A a b\nO a b\n");
    EXPECT_EQ(run({"model", bad.path()}).code, 1);
    EXPECT_EQ(run({"model", kb.path(), "--kind", "boole"}).code, 2);
}

TEST(Sorites, RoutedThroughDDoublePrime) {
    KbFile kb("terms: a b c\nA c a\nE b c\n");
    auto r = run({"sorites", kb.path(), "O a b", "--system", "d'"});
    EXPECT_EQ(r.code, 0);
    auto out = lines(r.out);
    ASSERT_FALSE(out.empty());
    EXPECT_EQ(out[0], "system: d''");
    EXPECT_NE(out.back().find("O a b"), std::string::npos);

    KbFile g0("A a c\nA a' c\nA c c'\nA c' b\nA c' b'\nE b b'\n");
    r = run({"sorites", g0.path(), "E a a'"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "none\n");
}

TEST(G2Prove, SequentLines) {
    KbFile kb("I b a\n");
    auto r = run({"g2prove", kb.path(), "I a b"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("⊢ I a b"), std::string::npos);
    EXPECT_NE(r.out.find("[Raa"), std::string::npos);
    r = run({"g2prove", kb.path(), "A a b"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "none\n");
}

TEST(Independence, TextAndJson) {
    auto r = run({"independence"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("ESub"), std::string::npos);
    auto j = nlohmann::json::parse(run({"independence", "--format", "json"}).out);
    EXPECT_TRUE(j.contains("cells"));
    EXPECT_EQ(j["cells"].size(), 62u);
}

TEST(Errors, ParseAndUsage) {
    KbFile bad("Q a b\n");
    auto r = run({"decide", bad.path()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("parse error"), std::string::npos);
    KbFile kb("A a b\n");
    EXPECT_EQ(run({"entails", kb.path(), "A a"}).code, 2);
    EXPECT_EQ(run({"decide", kb.path(), "--system", "h"}).code, 2);
    EXPECT_EQ(run({"decide", "/nonexistent/file.kb"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"decide", kb.path(), "--format", "xml"}).code, 2);
}

TEST(Errors, Help) {
    auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("decide"), std::string::npos);
}
