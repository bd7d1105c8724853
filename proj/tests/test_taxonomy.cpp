#include "helpers.hpp"

#include "sdgjel/report.hpp"
#include "sdgjel/taxonomy.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <string>

using namespace sdgjel;

namespace {

parse_error snapshot_error(const std::string& raw) {
    try {
        parse_jel_snapshot(raw);
    } catch (const parse_error& e) {
        return e;
    }
    throw std::runtime_error("no error raised");
}

parse_error catalog_error(const std::string& raw) {
    try {
        parse_sdg_catalog(raw);
    } catch (const parse_error& e) {
        return e;
    }
    throw std::runtime_error("no error raised");
}

std::string goal_json(int id, const std::string& sel = R"(["a","b","c"])") {
    return R"({"id":)" + std::to_string(id) +
           R"(,"title":"t","direct_keywords":["a"],"lafleur_keywords":["a","b","c"],"selected_three":)" + sel + "}";
}

std::string catalog_json(int n, int skip = 0, int twice = 0) {
    std::string s = "[";
    for (int i = 1; i <= n; ++i) {
        if (i == skip) continue;
        if (s.size() > 1) s += ",";
        s += goal_json(i);
        if (i == twice) s += "," + goal_json(i);
    }
    return s + "]";
}

const char* minimal = R"([
  {"code":"A","level":1,"parent":null,"label":"General Economics","guideline":""},
  {"code":"A1","level":2,"parent":"A","label":"General Economics","guideline":""},
  {"code":"A10","level":3,"parent":"A1","label":"General","guideline":""}
])";

}  // namespace

TEST(Snapshot, MinimalHierarchy) {
    auto t = parse_jel_snapshot(minimal);
    ASSERT_EQ(t.codes().size(), 3u);
    std::set<int> levels;
    for (const auto& c : t.codes()) levels.insert(c.level);
    EXPECT_EQ(levels, (std::set<int>{1, 2, 3}));
    EXPECT_EQ(t.find("A10")->parent, "A1");
    EXPECT_EQ(t.find("A")->parent, "");
    EXPECT_EQ(t.level3().size(), 1u);
}

TEST(Snapshot, CommentHeaderIsStripped) {
    auto t = parse_jel_snapshot(std::string("# provenance\n#  more\n\n") + minimal);
    EXPECT_EQ(t.codes().size(), 3u);
}

TEST(Snapshot, DuplicateCode) {
    auto e = snapshot_error(R"([{"code":"I","level":1,"parent":null,"label":"x","guideline":""},
        {"code":"I3","level":2,"parent":"I","label":"x","guideline":""},
        {"code":"I32","level":3,"parent":"I3","label":"x","guideline":""},
        {"code":"I32","level":3,"parent":"I3","label":"y","guideline":""}])");
    EXPECT_EQ(e.kind(), error_kind::duplicate_code);
    EXPECT_EQ(e.code(), "I32");
}

TEST(Snapshot, OrphanCode) {
    auto e = snapshot_error(R"([{"code":"I","level":1,"parent":null,"label":"x","guideline":""},
        {"code":"I32","level":3,"parent":"I3","label":"x","guideline":""}])");
    EXPECT_EQ(e.kind(), error_kind::orphan_code);
    EXPECT_EQ(e.code(), "I32");
}

TEST(Snapshot, BadCodes) {
    for (const char* tok : {R"("i32")", R"("I321")", R"("")", R"("3I")", "32"}) {
        auto e = snapshot_error(std::string(R"([{"code":"I","level":1,"parent":null,"label":"x","guideline":""},{"code":)") +
                                tok + R"(,"level":3,"parent":"I3","label":"x","guideline":""}])");
        EXPECT_EQ(e.kind(), error_kind::bad_code) << tok;
        EXPECT_EQ(e.entry(), 2) << tok;
    }
    // level must agree with the digit count
    auto e = snapshot_error(R"([{"code":"I3","level":3,"parent":"I","label":"x","guideline":""}])");
    EXPECT_EQ(e.kind(), error_kind::bad_code);
    // parent must be the enclosing class
    auto f = snapshot_error(R"([{"code":"I","level":1,"parent":null,"label":"x","guideline":""},
        {"code":"J","level":1,"parent":null,"label":"x","guideline":""},
        {"code":"I3","level":2,"parent":"J","label":"x","guideline":""}])");
    EXPECT_EQ(f.kind(), error_kind::bad_code);
}

TEST(Snapshot, NotJson) { EXPECT_EQ(snapshot_error("{oops").kind(), error_kind::bad_format); }

TEST(Stats, EmptyClass) {
    auto t = parse_jel_snapshot(R"([{"code":"Z","level":1,"parent":null,"label":"x","guideline":""}])");
    auto s = t.stats();
    EXPECT_EQ(s.level1_count, 1);
    EXPECT_EQ(s.level2_count, 0);
    EXPECT_EQ(s.level3_count, 0);
    ASSERT_EQ(s.per_class.size(), 1u);
    EXPECT_EQ(s.per_class[0], (class_count{'Z', 0, 0}));
}

TEST(Stats, GeneralHeadingIsNotASubcategory) {
    auto t = parse_jel_snapshot(R"([
      {"code":"B","level":1,"parent":null,"label":"x","guideline":""},
      {"code":"B0","level":2,"parent":"B","label":"General","guideline":""},
      {"code":"B00","level":3,"parent":"B0","label":"General","guideline":""},
      {"code":"B1","level":2,"parent":"B","label":"x","guideline":""},
      {"code":"B10","level":3,"parent":"B1","label":"General","guideline":""},
      {"code":"B11","level":3,"parent":"B1","label":"x","guideline":""}])");
    auto s = t.stats();
    EXPECT_EQ(s.per_class[0], (class_count{'B', 1, 3}));
}

TEST(Stats, BundledSnapshotMatchesReference) {
    const auto& b = testutil::bundled();
    auto s = b.tax.stats();
    EXPECT_EQ(s.level1_count, 20);
    EXPECT_EQ(s.level2_count, 122);
    EXPECT_EQ(s.level3_count, 856);
    EXPECT_EQ(b.tax.level3().size(), 856u);
    std::map<char, class_count> got;
    for (const auto& c : s.per_class) got[c.letter] = c;
    EXPECT_EQ(got['I'], (class_count{'I', 3, 23}));
    EXPECT_EQ(got['Q'], (class_count{'Q', 5, 49}));
    EXPECT_TRUE(diff_counts(s).empty());
}

TEST(Stats, MutationShowsUpInDiff) {
    auto raw = testutil::read_file(testutil::data("jel_snapshot.json"));
    auto pos = raw.find(R"({"code": "Q59")");
    ASSERT_NE(pos, std::string::npos);
    auto end = raw.find('\n', pos);
    raw.erase(pos, end - pos + 1);
    // the removed line was followed by more entries, so its trailing comma went with it
    auto t = parse_jel_snapshot(raw);
    auto d = diff_counts(t.stats());
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].letter, 'Q');
    EXPECT_EQ(d[0].got, (class_count{'Q', 5, 48}));
    EXPECT_EQ(d[0].want, (class_count{'Q', 5, 49}));
}

TEST(Snapshot, BundledLevel3Parents) {
    const auto& t = testutil::bundled().tax;
    for (const auto* c : t.level3()) {
        const auto* p = t.find(c->parent);
        ASSERT_NE(p, nullptr) << c->code;
        EXPECT_EQ(p->level, 2);
        EXPECT_EQ(c->code.rfind(p->code, 0), 0u);
    }
}

TEST(Catalog, BundledGoals) {
    const auto& g = testutil::bundled().goals;
    ASSERT_EQ(g.size(), 17u);
    EXPECT_EQ(g[0].title, "End poverty in all its forms everywhere");
    EXPECT_EQ(g[0].lafleur_keywords[0], (keyword{"poverty", 1}));
    EXPECT_EQ(g[0].lafleur_keywords[1], (keyword{"social", 2}));
    EXPECT_EQ(g[0].lafleur_keywords[2], (keyword{"protection", 3}));
    EXPECT_EQ(g[0].lafleur_keywords[3], (keyword{"poor", 4}));
    std::vector<std::string> sel;
    for (const auto& k : g[6].selected_three) sel.push_back(k.surface);
    EXPECT_EQ(sel, (std::vector<std::string>{"energy", "electricity", "renewable"}));
    for (const auto& goal : g) {
        EXPECT_LE(goal.lafleur_keywords.size(), 20u);
        EXPECT_EQ(goal.selected_three.size(), 3u);
        EXPECT_FALSE(goal.direct_keywords.empty());
        std::set<std::string> s;
        for (const auto& k : goal.lafleur_keywords) s.insert(k.surface);
        EXPECT_EQ(s.size(), goal.lafleur_keywords.size());
    }
}

TEST(Catalog, SixteenGoalsRejected) {
    auto e = catalog_error(catalog_json(17, 9));
    EXPECT_EQ(e.kind(), error_kind::bad_catalog);
    EXPECT_EQ(e.goal(), 9);
}

TEST(Catalog, DuplicateGoalRejected) {
    auto e = catalog_error(catalog_json(17, 0, 4));
    EXPECT_EQ(e.kind(), error_kind::bad_catalog);
    EXPECT_EQ(e.goal(), 4);
}

TEST(Catalog, SelectedThreeLength) {
    std::string s = "[" + goal_json(1, R"(["a","b"])");
    for (int i = 2; i <= 17; ++i) s += "," + goal_json(i);
    s += "]";
    auto e = catalog_error(s);
    EXPECT_EQ(e.kind(), error_kind::bad_catalog);
    EXPECT_EQ(e.goal(), 1);
}

TEST(Catalog, SelectedMustComeFromList) {
    std::string s = "[" + goal_json(1, R"(["a","b","zebra"])");
    for (int i = 2; i <= 17; ++i) s += "," + goal_json(i);
    s += "]";
    EXPECT_EQ(catalog_error(s).goal(), 1);
    // plural variants count as the same keyword
    std::string p = "[" + goal_json(1, R"(["as","bs","c"])");
    for (int i = 2; i <= 17; ++i) p += "," + goal_json(i);
    p += "]";
    EXPECT_NO_THROW(parse_sdg_catalog(p));
}

TEST(Catalog, KeywordSurfaceSyntax) {
    std::string s = "[" + goal_json(1, R"(["a","b","Bad Word"])");
    for (int i = 2; i <= 17; ++i) s += "," + goal_json(i);
    s += "]";
    EXPECT_EQ(catalog_error(s).kind(), error_kind::bad_catalog);
    EXPECT_TRUE(valid_keyword_surface("social_protection"));
    EXPECT_FALSE(valid_keyword_surface("_x"));
    EXPECT_FALSE(valid_keyword_surface("a__b"));
}

TEST(Stoplist, DisjointFromSelectedKeywords) {
    const auto& b = testutil::bundled();
    EXPECT_TRUE(stoplist_conflicts(b.stop, b.goals).empty());
    for (const char* w : {"change", "impacts", "patterns", "rapid", "added", "policies", "capita", "nations"})
        EXPECT_TRUE(b.stop.general_words.count(w)) << w;
}
