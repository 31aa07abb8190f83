#include <sstream>

#include <gtest/gtest.h>

#include "polyrep/text.hpp"

using polyrep::casefold;
using polyrep::remove_stopwords;
using polyrep::Stoplist;
using polyrep::tokenize;
using Tokens = std::vector<std::string>;

TEST(Tokenize, LowercasesAndSplits) {
  EXPECT_EQ(tokenize("Retirement and health issues"),
            (Tokens{"retirement", "and", "health", "issues"}));
}

TEST(Tokenize, EmptyInput) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, ApostropheAndParensSplitDiacriticsKept) {
  EXPECT_EQ(tokenize("Bäcker's work (2011)"), (Tokens{"bäcker", "s", "work", "2011"}));
}

TEST(Tokenize, NonAsciiCaseFolding) {
  EXPECT_EQ(tokenize("ÄRZTE Über-Gesundheit ÉCOLE"), (Tokens{"ärzte", "über", "gesundheit", "école"}));
  EXPECT_EQ(tokenize("ΑΘΗΝΑ Москва"), (Tokens{"αθηνα", "москва"}));
}

TEST(Tokenize, InvalidUtf8ActsAsSeparator) {
  EXPECT_EQ(tokenize("ab\xff" "cd"), (Tokens{"ab", "cd"}));
  EXPECT_EQ(tokenize("\xc3"), Tokens{});
}

TEST(Tokenize, IdempotentOnRejoinedOutput) {
  for (const char* text : {"Retirement and health issues", "Bäcker's work (2011)",
                           "  mixed\tWHITESPACE,punct!! ÄÖÜ ß", "a-b_c.d"}) {
    const auto once = tokenize(text);
    std::string joined;
    for (const auto& t : once) joined += (joined.empty() ? "" : " ") + t;
    EXPECT_EQ(tokenize(joined), once) << text;
  }
}

TEST(Casefold, WholeStringKeepsSpacesAndPunctuation) {
  EXPECT_EQ(casefold("Hauser, Richard"), "hauser, richard");
  EXPECT_EQ(casefold("BÄCKER, Gerhard"), "bäcker, gerhard");
}

TEST(Trim, StripsAsciiWhitespace) {
  EXPECT_EQ(polyrep::trim("  x y \t\n"), "x y");
  EXPECT_EQ(polyrep::trim("   "), "");
}

TEST(RemoveStopwords, FiltersInOrder) {
  const Stoplist s({"and"});
  EXPECT_EQ(remove_stopwords({"retirement", "and", "health"}, s), (Tokens{"retirement", "health"}));
  EXPECT_TRUE(remove_stopwords({}, s).empty());
  EXPECT_TRUE(remove_stopwords({"the", "the", "the"}, Stoplist({"the"})).empty());
}

TEST(RemoveStopwords, Idempotent) {
  const Stoplist s({"and", "of"});
  const Tokens x{"rights", "of", "and", "women", "and"};
  EXPECT_EQ(remove_stopwords(remove_stopwords(x, s), s), remove_stopwords(x, s));
}

TEST(Stoplist, FromStreamSkipsCommentsAndNormalizes) {
  std::istringstream in("# comment\nThe\n\n  and  \n");
  const auto s = Stoplist::from_stream(in, "test");
  EXPECT_TRUE(s.contains("the"));
  EXPECT_TRUE(s.contains("and"));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.source(), "test");
}

TEST(Stoplist, DefaultEnglish) {
  const auto s = Stoplist::default_english();
  EXPECT_TRUE(s.contains("and"));
  EXPECT_TRUE(s.contains("the"));
  EXPECT_FALSE(s.contains("health"));
  EXPECT_EQ(s.source(), "builtin:en");
}
