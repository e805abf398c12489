#include <gtest/gtest.h>

#include <map>
#include <set>

#include <json.hpp>

#include "twobridge/tables.hpp"

using namespace twobridge;

TEST(ParseFamily, Forms) {
    EXPECT_EQ(parse_family("(-2t^-1, -2-2t)"), SlopeFamily::t_family(Branch::t_upper, 0, -2, -2));
    EXPECT_EQ(parse_family("(-2-t^-1, -2-t)"), SlopeFamily::t_family(Branch::t_upper, -2, -1, -2));
    EXPECT_EQ(parse_family("(2-t^-1, -t)"), SlopeFamily::t_family(Branch::t_upper, 2, -1, 0));
    EXPECT_EQ(parse_family("(-4, -2)"), SlopeFamily::t_family(Branch::t_upper, -4, 0, -2));
    EXPECT_EQ(parse_family("(0, 0)"), SlopeFamily::t_family(Branch::t_upper, 0, 0, 0));
    EXPECT_EQ(parse_family("(-3+s, -3-s)"), SlopeFamily::s_family(-3, 1));
    EXPECT_EQ(parse_family("(3s, -3s)"), SlopeFamily::s_family(0, 3));
    EXPECT_EQ(parse_family("(s, -s)"), SlopeFamily::s_family(0, 1));
    EXPECT_EQ(parse_family(" (10+t^-1, 2+t) "), SlopeFamily::t_family(Branch::t_upper, 10, 1, 2));
}

TEST(ParseFamily, RejectsMalformedText) {
    EXPECT_THROW(parse_family("-2, -2"), std::invalid_argument);
    EXPECT_THROW(parse_family("(-2)"), std::invalid_argument);
    EXPECT_THROW(parse_family("(t^-1, 2t)"), std::invalid_argument);
    EXPECT_THROW(parse_family("(1+s, 2-s)"), std::invalid_argument);
    EXPECT_THROW(parse_family("(x, 2)"), std::invalid_argument);
    EXPECT_THROW(parse_family("(t^-1t, t)"), std::invalid_argument);
}

TEST(ParseFamily, FormatRoundTrip) {
    for (const auto& row : builtin_rows()) {
        for (const auto& f : row.families) EXPECT_EQ(parse_family(format_family(f)), f);
    }
}

TEST(Corpus, ShapeAndRoundTrip) {
    const auto& rows = builtin_rows();
    ASSERT_EQ(rows.size(), 56u);
    std::map<Int, int> per_crossing;
    int named = 0;
    for (const auto& r : rows) {
        ++per_crossing[crossing_number(r.link)];
        if (r.rolfsen) {
            ++named;
            EXPECT_EQ(r.rolfsen, rolfsen_name(r.link));
        }
        EXPECT_EQ(canonical_rep(r.link, true), r.link);
    }
    EXPECT_EQ(named, 29);
    EXPECT_EQ(per_crossing[9], 12);
    EXPECT_EQ(per_crossing[10], 27);
    EXPECT_EQ(emit_corpus(rows), std::string(builtin_corpus));
    EXPECT_EQ(emit_corpus(parse_corpus(emit_corpus(rows))), emit_corpus(rows));
}

TEST(Corpus, RejectsBadLines) {
    EXPECT_THROW(parse_corpus("1/2 2^2_1 (t^-1, t)\n"), std::invalid_argument);
    EXPECT_THROW(parse_corpus("1/3\t-\t(t^-1, t)\n"), std::invalid_argument);
    EXPECT_TRUE(parse_corpus("\n\n").empty());
}

TEST(Verify, Examples) {
    const TableReport two = verify_corpus(2);
    EXPECT_EQ(two.rows.size(), 1u);
    EXPECT_TRUE(two.all_match());
    const TableReport eight = verify_corpus(8);
    EXPECT_EQ(eight.matched(), 17u);
    EXPECT_EQ(eight.summary(), "17/17 match");
    const TableReport ten = verify_corpus(10);
    EXPECT_EQ(ten.matched(), 56u);
    EXPECT_TRUE(ten.all_match());
    EXPECT_EQ(ten.summary(), "56/56 match");
}

TEST(Verify, ReportsMismatchAndMissing) {
    auto rows = builtin_rows();
    rows[2].families.pop_back();                                              // 3/8 loses its s-family
    rows[1].families.push_back(SlopeFamily::t_family(Branch::t_upper, 9, 0, 9));  // 1/4 gains a bogus one
    rows.erase(rows.begin());                                                 // 1/2 disappears
    const TableReport rep = verify_corpus(5, rows);
    EXPECT_EQ(rep.rows.size(), 3u);
    EXPECT_EQ(rep.matched(), 0u);
    EXPECT_EQ(rep.mismatched(), 2u);
    EXPECT_EQ(rep.missing(), 1u);
    EXPECT_EQ(rep.matched() + rep.mismatched() + rep.missing(), rep.rows.size());
    EXPECT_FALSE(rep.all_match());
    for (const auto& r : rep.rows) {
        if (r.link == make_link(3, 8)) {
            ASSERT_EQ(r.not_tabled.size(), 1u);
            EXPECT_EQ(r.not_tabled[0], SlopeFamily::s_family(-3, 1));
        }
        if (r.link == make_link(1, 4)) {
            ASSERT_EQ(r.not_computed.size(), 1u);
            EXPECT_EQ(r.not_computed[0].x, 9);
        }
    }
    EXPECT_EQ(rep.summary(), "0/3 match, 2 mismatch, 1 missing");
}

TEST(SurgeryFamily, MatchesTheFamilyTable) {
    for (Int k = 1; k <= 5; ++k) {
        EXPECT_EQ(family_table_for_surgery_family(k), surgery_family_expected(k)) << k;
    }
    EXPECT_THROW(family_table_for_surgery_family(0), std::invalid_argument);
}

TEST(SurgeryFamily, KOneLacksTheNegativeDiagonal) {
    const auto k1 = family_table_for_surgery_family(1);
    const auto k2 = family_table_for_surgery_family(2);
    const auto neg = SlopeFamily::t_family(Branch::t_full, 0, -2, 0);
    EXPECT_EQ(std::count(k1.begin(), k1.end(), neg), 0);
    EXPECT_EQ(std::count(k2.begin(), k2.end(), neg), 1);
}

TEST(SurgeryFamily, KOneAgreesWithTheFiveCrossingRow) {
    const auto shown = presentation(surgery_family_expected(1));
    const CorpusRow* row = find_row(builtin_rows(), make_link(3, 8));
    ASSERT_NE(row, nullptr);
    const std::set<SlopeFamily> tabled(row->families.begin(), row->families.end());
    EXPECT_EQ(std::set<SlopeFamily>(shown.begin(), shown.end()), tabled);
}

TEST(SurgeryFamily, PathTableRows) {
    EXPECT_EQ(surgery_family_mforms(1).size(), 5u);
    EXPECT_EQ(surgery_family_mforms(2).size(), 6u);
    EXPECT_EQ(surgery_family_mforms(3)[4].raw, (MForm{1, -2, -9}));
    EXPECT_EQ(surgery_family_sform(3), (SForm{-6, 5}));
}

TEST(Emit, TextForOneHalf) {
    const SlopeResult r = compute_slopes(make_link(1, 2));
    EXPECT_EQ(emit(std::span(&r, 1), Format::text), "1/2: (-t^-1, -t); (t^-1, t)\n");
}

TEST(Emit, EmptyDocuments) {
    const std::span<const SlopeResult> none;
    EXPECT_EQ(nlohmann::json::parse(emit(none, Format::json)), nlohmann::json::array());
    EXPECT_EQ(emit(none, Format::csv), "p,q,branch,X,Y,Z,domain_lo,domain_hi,phi\n");
    EXPECT_EQ(emit(none, Format::text), "");
    const std::string tex = emit(none, Format::tex);
    EXPECT_NE(tex.find("\\begin{array}"), std::string::npos);
    EXPECT_NE(tex.find("\\end{array}"), std::string::npos);
}

TEST(Emit, JsonForThreeEighths) {
    const SlopeResult r = compute_slopes(make_link(3, 8));
    const auto doc = nlohmann::json::parse(emit(std::span(&r, 1), Format::json));
    ASSERT_EQ(doc.size(), 1u);
    const auto& j = doc[0];
    EXPECT_EQ(j["p"], 3);
    EXPECT_EQ(j["q"], 8);
    EXPECT_EQ(j["rolfsen"], "5^2_1");
    EXPECT_EQ(j["linking_number"], -1);
    EXPECT_EQ(j["presentation"].size(), 5u);
    EXPECT_EQ(j["families"].size(), r.families.size());
    std::set<std::string> branches;
    for (const auto& f : j["families"]) {
        branches.insert(f["branch"].get<std::string>());
        EXPECT_EQ(f["domain"].size(), 2u);
        EXPECT_TRUE(f["phi"] == "none" || f["phi"] == "first" || f["phi"] == "second");
    }
    EXPECT_EQ(branches, (std::set<std::string>{"T", "S", "endpoint"}));
    EXPECT_EQ(j["presentation"][4]["coeffs"], nlohmann::json::array({-3, 1}));
}

TEST(Emit, JsonRolfsenIsNullPastNineCrossings) {
    const SlopeResult r = compute_slopes(make_link(7, 40));
    const auto doc = nlohmann::json::parse(emit(std::span(&r, 1), Format::json));
    EXPECT_TRUE(doc[0]["rolfsen"].is_null());
}

TEST(Emit, CsvRows) {
    const SlopeResult r = compute_slopes(make_link(3, 8));
    const std::string csv = emit(std::span(&r, 1), Format::csv);
    EXPECT_NE(csv.find("3,8,s,-3,1,_,-1,1,none\n"), std::string::npos);
    EXPECT_NE(csv.find("3,8,endpoint,-4,_,_,1/0,1/0,second\n"), std::string::npos);
    EXPECT_NE(csv.find("3,8,t_upper,-4,0,-2,1,1/0,none\n"), std::string::npos);
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), r.families.size() + 1);
}

TEST(Emit, TexUsesTableNotation) {
    const std::vector<SlopeResult> rs{compute_slopes(make_link(1, 2)), compute_slopes(make_link(3, 8))};
    const std::string tex = emit(rs, Format::tex);
    EXPECT_NE(tex.find("2^2_{1}&1/2&(-t^{-1},-t)&(t^{-1},t)&&\\\\"), std::string::npos);
    EXPECT_NE(tex.find("(-2t^{-1},-2 - 2 t)"), std::string::npos);
    EXPECT_NE(tex.find("&&(-3 + s,-3 - s)&&&\\\\"), std::string::npos);
}

TEST(Emit, Deterministic) {
    std::vector<SlopeResult> rs;
    for (const auto& l : enumerate_links(7, true)) rs.push_back(compute_slopes(l));
    for (const Format f : {Format::json, Format::csv, Format::tex, Format::text}) {
        std::vector<SlopeResult> again;
        for (const auto& l : enumerate_links(7, true)) again.push_back(compute_slopes(l));
        EXPECT_EQ(emit(rs, f), emit(again, f));
    }
}

TEST(Emit, FormatNames) {
    EXPECT_EQ(parse_format("json"), Format::json);
    EXPECT_EQ(parse_format("tex"), Format::tex);
    EXPECT_THROW(parse_format("yaml"), std::invalid_argument);
}
