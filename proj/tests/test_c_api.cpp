#include <doctest.h>

#include <cstring>
#include <string>

#include "leecheck.h"

namespace {

struct Text {
    char* s = nullptr;
    ~Text() { lc_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

}  // namespace

TEST_CASE("caps handle") {
    lc_caps* caps = nullptr;
    REQUIRE(lc_caps_new(&caps) == LC_OK);
    CHECK(lc_caps_set(caps, "max_field_degree", 9) == LC_OK);
    std::uint64_t x = 0;
    CHECK(lc_caps_get(caps, "max_field_degree", &x) == LC_OK);
    CHECK(x == 9);
    CHECK(lc_caps_set(caps, "nope", 1) == LC_ERR_USAGE);
    CHECK(std::string(lc_last_error()).find("nope") != std::string::npos);
    CHECK(lc_caps_set(caps, "seed", 0) == LC_ERR_USAGE);
    CHECK(lc_caps_load(caps, "/nonexistent/caps") == LC_ERR_IO);
    Text t;
    CHECK(lc_caps_to_text(caps, &t.s) == LC_OK);
    CHECK(t.str().find("max_field_degree = 9\n") != std::string::npos);
    lc_caps_free(caps);
}

TEST_CASE("check and emit") {
    lc_verdicts* v = nullptr;
    REQUIRE(lc_check(57, 2, nullptr, 0, nullptr, &v) == LC_OK);
    REQUIRE(lc_verdicts_count(v) == 1);
    std::uint64_t n = 0;
    lc_overall overall = LC_OPEN;
    int skips = -1;
    CHECK(lc_verdicts_get(v, 0, &n, &overall, &skips) == LC_OK);
    CHECK(n == 57);
    CHECK(overall == LC_EXCLUDED);
    CHECK(lc_verdicts_get(v, 1, &n, &overall, &skips) == LC_ERR_USAGE);

    Text json, csv;
    REQUIRE(lc_verdicts_emit(v, "json", 0, &json.s) == LC_OK);
    REQUIRE(lc_verdicts_emit(v, "csv", 0, &csv.s) == LC_OK);
    CHECK(csv.str().rfind("n,r,order,overall,tier,criteria_fired,skips\n57,2,6613,excluded,", 0) == 0);
    Text bad;
    CHECK(lc_verdicts_emit(v, "xml", 0, &bad.s) == LC_ERR_USAGE);

    lc_verdicts* back = nullptr;
    REQUIRE(lc_verdicts_parse(json.s, &back) == LC_OK);
    Text again;
    REQUIRE(lc_verdicts_emit(back, "json", 0, &again.s) == LC_OK);
    CHECK(again.str() == json.str());
    CHECK(lc_verdicts_soundness(v, nullptr) == LC_OK);
    lc_verdicts_free(back);
    lc_verdicts_free(v);

    CHECK(lc_check(1, 2, nullptr, 0, nullptr, &v) == LC_ERR_USAGE);
    CHECK(lc_check(5, 2, nullptr, 0, "v7", &v) == LC_ERR_USAGE);
    CHECK(lc_verdicts_parse("{", &v) == LC_ERR_USAGE);
}

TEST_CASE("scan, counts and oracle") {
    lc_verdicts* v = nullptr;
    REQUIRE(lc_scan(2, 2, 30, nullptr, LC_EARLY_EXIT, "kim,small_v", &v) == LC_OK);
    CHECK(lc_verdicts_count(v) == 29);
    CHECK(lc_verdicts_soundness(v, nullptr) == LC_OK);
    lc_verdicts_free(v);

    Text c;
    REQUIRE(lc_counts(2, 100, "kim", nullptr, &c.s) == LC_OK);
    CHECK(c.str().find("\"count\": 68") != std::string::npos);

    Text o;
    REQUIRE(lc_oracle(2, 2, nullptr, 0, 0, &o.s) == LC_OK);
    CHECK(o.str().find("\"status\": \"exists\"") != std::string::npos);
    CHECK(o.str().find("C13") != std::string::npos);

    Text orb;
    CHECK(lc_orbit(10, 2, 13, 5, nullptr, 0, &orb.s) == LC_OK);
    CHECK(orb.str().find("not_applicable") != std::string::npos);
    Text orb3;
    CHECK(lc_orbit(8, 3, 7, 3, nullptr, 0, &orb3.s) == LC_ERR_USAGE);
}
