#include <gtest/gtest.h>

#include <string>

#include "artinwalk/cli/measure_spec.hpp"
#include "artinwalk/drift/drift.hpp"

using namespace artinwalk;

TEST(MeasureSpec, ParsesEntriesAndComments)
{
    const ArtinIndex k(3);
    const MeasureSpec s = parse_measure_spec(k, "# simple walk\n"
                                                "a    0 0.25\n"
                                                "b    0 0.25  # trailing comment\n"
                                                "\n"
                                                "a^-1 0 0.25\n"
                                                "ba  -1 0.25\n");
    ASSERT_EQ(s.entries.size(), 4u);
    EXPECT_EQ(s.entries[1].gen, "b");
    EXPECT_EQ(s.entries[3].delta_exp, -1);
    EXPECT_DOUBLE_EQ(s.entries[2].prob, 0.25);
}

TEST(MeasureSpec, InverseLettersMatchBuiltInMeasure)
{
    const ArtinIndex k(3);
    // b^-1 = ab.Delta^-1, written twice: once as a token, once explicitly.
    const StepMeasureFull a = to_measure(parse_measure_spec(k, "a 0 0.25\nb 0 0.25\na^-1 0 0.25\nab -1 0.25\n"));
    const DriftReport d = compute_drifts(a).report;
    const DriftReport u = compute_drifts(uniform_artin(k)).report;
    EXPECT_NEAR(d.gamma, u.gamma, 1e-12);
    EXPECT_NEAR(d.gamma_delta, u.gamma_delta, 1e-12);
}

TEST(MeasureSpec, DeltaExponentIsAddedToTheToken)
{
    const ArtinIndex k(4);
    const StepMeasureFull nu = to_measure(parse_measure_spec(k, "a 2 0.5\nD -1 0.5\n"));
    double mean = 0.0;
    for (const FullAtom& x : nu.atoms()) mean += x.prob * static_cast<double>(x.delta_exp);
    EXPECT_DOUBLE_EQ(mean, 0.5 * 2 + 0.5 * 0);
}

TEST(MeasureSpec, ErrorsNameTheLine)
{
    const ArtinIndex k(3);
    auto message = [&](const std::string& text) {
        try {
            (void)parse_measure_spec(k, text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message("a 0 0.5\nb 0\n").find("line 2"), std::string::npos);
    EXPECT_NE(message("a 0 0.5\n\nb x 0.5\n").find("line 3"), std::string::npos);
    EXPECT_NE(message("a 0 0.5,\n").find("line 1"), std::string::npos);
    EXPECT_NE(message("a 0 1\nabc 0 0\n").find("line 2"), std::string::npos);
    EXPECT_NE(message("# nothing\n").find("no entries"), std::string::npos);
    // ab.ab is not a generator of A_3 (longer than k - 1).
    EXPECT_THROW(parse_measure_spec(k, "aba 0 1\n"), ParseError);
}

TEST(MeasureSpec, ProbabilitiesMustSumToOne)
{
    const ArtinIndex k(3);
    EXPECT_THROW(to_measure(parse_measure_spec(k, "a 0 0.5\nb 0 0.4\n")), InvalidMeasure);
    EXPECT_THROW(to_measure(parse_measure_spec(k, "a 0 1.5\nb 0 -0.5\n")), InvalidMeasure);
    EXPECT_NO_THROW(to_measure(parse_measure_spec(k, "a 0 0.1\nb 0 0.2\nb^-1 0 0.7\n")));
}
