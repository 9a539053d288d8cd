#include "figedit/error.hpp"
#include "figedit/figscript.hpp"
#include "figedit/patcher.hpp"
#include "figedit/session.hpp"

#include "support/generators.hpp"
#include "support/temp_dir.hpp"

#include <gtest/gtest.h>

using namespace figedit;
using figedit::testing::slurp;
using figedit::testing::TempDir;

namespace {

const std::string kStart(kSentinelStart);
const std::string kEnd(kSentinelEnd);

const std::string kScript =
    "# demo\n"
    "figure(1).set_size_cm(10.0, 8.0)\n"
    "figure(1).add_axes([0.1, 0.1, 0.8, 0.8])\n"
    "figure(1).axes[0].set_xlabel(\"t\")\n"
    "\n"
    "show()\n"
    "# tail\n";

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        out.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

ErrorKind open_error(const std::filesystem::path& p, std::size_t* line = nullptr)
{
    try {
        Session::open(p);
    } catch (const Error& e) {
        if (line) *line = e.line().value_or(0);
        return e.kind();
    }
    ADD_FAILURE() << "open accepted";
    return ErrorKind::IoError;
}

}  // namespace

TEST(Session, OpenWithoutBlock)
{
    TempDir dir;
    const auto p = dir.write("s.fig", kScript);
    const Session s = Session::open(p);
    EXPECT_TRUE(s.tracker().empty());
    EXPECT_EQ(s.live_doc(), s.base_doc());
    EXPECT_EQ(s.live_doc().axes.size(), 1u);
    EXPECT_EQ(s.live_doc().axes[0].xlabel, "t");
    EXPECT_FALSE(s.dirty());
}

TEST(Session, OpenWithSavedBlock)
{
    TempDir dir;
    const auto p = dir.write("s.fig",
                             "figure(1).add_axes([0.1, 0.1, 0.8, 0.8])\n" + kStart +
                                 "\nfigure(1).axes[0].set_position([0.2, 0.2, 0.5, 0.5])\n" + kEnd + "\nshow()\n");
    const Session s = Session::open(p);
    EXPECT_EQ(s.tracker().size(), 1u);
    EXPECT_EQ(s.base_doc().axes[0].position, (Rect{0.1, 0.1, 0.8, 0.8}));
    EXPECT_EQ(s.live_doc().axes[0].position, (Rect{0.2, 0.2, 0.5, 0.5}));
}

TEST(Session, OpenErrorsCarryScriptLines)
{
    TempDir dir;
    std::size_t line = 0;
    const auto dup = dir.write("dup.fig", "figure(1).add_axes([0.1, 0.1, 0.8, 0.8])\n" + kStart +
                                              "\nfigure(1).axes[0].set_title(\"a\")\n"
                                              "figure(1).axes[0].set_title(\"b\")\n" +
                                              kEnd + "\nshow()\n");
    EXPECT_EQ(open_error(dup, &line), ErrorKind::DuplicateKeyInBlock);
    EXPECT_EQ(line, 4u);

    const auto bad = dir.write("bad.fig", "figure(1).add_axes([0.1, 0.1, 0.8, 0.8])\n"
                                          "figure(1).axes[0].set_xlim(1.0, 1.0)\nshow()\n");
    EXPECT_EQ(open_error(bad, &line), ErrorKind::InvariantViolation);
    EXPECT_EQ(line, 2u);

    const auto syntax = dir.write("syn.fig", "# ok\nfigure(1).set_dpi(90.0\nshow()\n");
    EXPECT_EQ(open_error(syntax, &line), ErrorKind::SyntaxError);
    EXPECT_EQ(line, 2u);

    const auto in_block = dir.write("blk.fig", "figure(1).add_axes([0.1, 0.1, 0.8, 0.8])\n" + kStart +
                                                   "\nfigure(1).set_dpi(90.0)\n"
                                                   "figure(1).axes[3].set_title(\"x\")\n" +
                                                   kEnd + "\nshow()\n");
    EXPECT_EQ(open_error(in_block, &line), ErrorKind::PathOutOfRange);
    EXPECT_EQ(line, 4u);

    EXPECT_EQ(open_error(dir.path() / "missing.fig"), ErrorKind::FileNotFound);
}

TEST(Session, EditAppliesAndRecords)
{
    TempDir dir;
    Session s = Session::open(dir.write("s.fig", kScript));
    s.edit("figure(1).axes[0].set_position([0.2, 0.2, 0.5, 0.5])");
    EXPECT_EQ(s.live_doc().axes[0].position, (Rect{0.2, 0.2, 0.5, 0.5}));
    EXPECT_EQ(s.tracker().size(), 1u);
    EXPECT_TRUE(s.dirty());
    s.edit("figure(1).axes[0].set_position([0.2, 0.2, 0.5, 0.5])");
    EXPECT_EQ(s.tracker().size(), 1u);
    EXPECT_EQ(s.revision(), 2u);
}

TEST(Session, CreationThenPropertyReplays)
{
    TempDir dir;
    Session s = Session::open(dir.write("s.fig", kScript));
    const auto created = s.edit("figure(1).axes[0].text(0.5, 0.5, \"A\")");
    ASSERT_TRUE(created);
    EXPECT_EQ(created->to_text(), "figure(1).axes[0].texts[0]");
    s.edit("figure(1).axes[0].texts[0].set_fontsize(14.0)");
    EXPECT_EQ(s.live_doc().axes[0].texts.at(0).fontsize_pt, 14.0);
    s.save();
    const Session again = Session::open(s.script_path());
    EXPECT_EQ(again.live_doc(), s.live_doc());
}

TEST(Session, FailedEditChangesNothing)
{
    TempDir dir;
    Session s = Session::open(dir.write("s.fig", kScript));
    s.edit("figure(1).set_dpi(120.0)");
    const FigureDoc before = s.live_doc();
    const auto block = s.tracker().emit_block();
    EXPECT_THROW(s.edit("figure(1).axes[0].set_xlim(1.0, 1.0)"), Error);
    EXPECT_THROW(s.edit("figure(1).axes[5].set_title(\"x\")"), Error);
    EXPECT_THROW(s.edit("figure(1).axes[0].set_title(1.0)"), Error);
    EXPECT_THROW(s.edit("figure(1).axes[0].texts[0].set_fontsize(8.0)"), Error);
    EXPECT_EQ(s.live_doc(), before);
    EXPECT_EQ(s.tracker().emit_block(), block);
    EXPECT_EQ(s.revision(), 1u);
}

TEST(Session, EditRoundsArgumentsToSavedText)
{
    TempDir dir;
    Session s = Session::open(dir.write("s.fig", kScript));
    s.edit("figure(1).axes[0].set_position([0.123456789, 0.2, 0.5, 0.5])");
    EXPECT_EQ(s.live_doc().axes[0].position.x, 0.123457);
    s.save();
    EXPECT_EQ(Session::open(s.script_path()).live_doc(), s.live_doc());
}

TEST(Session, SaveTwiceLeavesFileUnchanged)
{
    TempDir dir;
    Session s = Session::open(dir.write("s.fig", kScript));
    s.edit("figure(1).set_dpi(120.0)");
    EXPECT_TRUE(s.save().written);
    const std::string once = slurp(s.script_path());
    EXPECT_FALSE(s.save().written);
    EXPECT_EQ(slurp(s.script_path()), once);
    Session reopened = Session::open(s.script_path());
    EXPECT_FALSE(reopened.save().written);
    EXPECT_EQ(slurp(s.script_path()), once);
}

TEST(Session, SaveChangesOnlyTheBlock)
{
    TempDir dir;
    Session s = Session::open(dir.write("s.fig", kScript));
    s.edit("figure(1).axes[0].set_title(\"T\")");
    s.save();
    const auto first = lines_of(slurp(s.script_path()));
    s.edit("figure(1).set_dpi(120.0)");
    s.save();
    const auto second = lines_of(slurp(s.script_path()));
    // Oracle: the original lines, the marker and trailing lines are intact; only the block grew by one.
    const auto original = lines_of(kScript);
    ASSERT_EQ(second.size(), first.size() + 1);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(second[i], original[i]);
    EXPECT_EQ(second[5], kStart);
    EXPECT_EQ(second[second.size() - 3], kEnd);
    EXPECT_EQ(second[second.size() - 2], "show()");
    EXPECT_EQ(second.back(), "# tail");
    EXPECT_EQ(second[6], "figure(1).set_dpi(120.0)");
    EXPECT_EQ(second[7], "figure(1).axes[0].set_title(\"T\")");
}

TEST(Session, EmptyTrackerSavesEmptyBlockBeforeMarker)
{
    TempDir dir;
    Session s = Session::open(dir.write("s.fig", kScript));
    EXPECT_TRUE(s.save().written);
    const auto out = lines_of(slurp(s.script_path()));
    EXPECT_EQ(out[5], kStart);
    EXPECT_EQ(out[6], kEnd);
    EXPECT_EQ(out[7], "show()");
}

TEST(Session, BackupWrittenOncePerSession)
{
    TempDir dir;
    Session s = Session::open(dir.write("s.fig", kScript));
    const auto bak = dir.path() / "s.fig.bak";
    EXPECT_FALSE(std::filesystem::exists(bak));
    s.edit("figure(1).set_dpi(120.0)");
    s.save();
    EXPECT_EQ(slurp(bak), kScript);
    s.edit("figure(1).set_dpi(130.0)");
    s.save();
    EXPECT_EQ(slurp(bak), kScript);
}

TEST(Session, SaveRereadsTheFile)
{
    TempDir dir;
    const auto p = dir.write("s.fig", kScript);
    Session s = Session::open(p);
    s.edit("figure(1).set_dpi(120.0)");
    dir.write("s.fig", "# edited outside\n" + kScript);
    s.save();
    const auto out = lines_of(slurp(p));
    EXPECT_EQ(out[0], "# edited outside");
    EXPECT_EQ(out[7], "figure(1).set_dpi(120.0)");
}

TEST(Session, LockOption)
{
    TempDir dir;
    const auto p = dir.write("s.fig", kScript);
    {
        const Session s = Session::open(p, {true});
        EXPECT_TRUE(std::filesystem::exists(dir.path() / "s.fig.lock"));
        try {
            Session::open(p, {true});
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::Locked);
        }
    }
    EXPECT_FALSE(std::filesystem::exists(dir.path() / "s.fig.lock"));
}

TEST(Session, DataWarningsSurface)
{
    TempDir dir;
    dir.write("data.csv", figedit::testing::sample_csv());
    const auto p = dir.write("s.fig", "figure(1).add_axes([0.1, 0.1, 0.8, 0.8])\n"
                                      "figure(1).axes[0].plot_csv(\"data.csv\", \"t\", \"w\")\nshow()\n");
    const Session s = Session::open(p);
    EXPECT_EQ(s.live_doc().axes[0].series.at(0).points.size(), 4u);
    EXPECT_EQ(s.warnings().size(), 1u);
    EXPECT_EQ(slurp(dir.path() / "data.csv"), figedit::testing::sample_csv());
}

TEST(Session, RandomEditsSurviveSaveAndReopen)
{
    figedit::testing::Rng rng(57);
    for (int i = 0; i < 60; ++i) {
        TempDir dir;
        dir.write("data.csv", figedit::testing::sample_csv());
        Session s = Session::open(dir.write("s.fig", figedit::testing::random_script(rng)));
        for (std::size_t n = 1 + figedit::testing::pick(rng, 20); n > 0; --n) {
            try {
                s.edit(figedit::testing::random_edit(rng, s.live_doc()));
            } catch (const Error&) {
            }
        }
        s.save();
        const std::string once = slurp(s.script_path());
        Session again = Session::open(s.script_path());
        EXPECT_TRUE(approx_equal(again.live_doc(), s.live_doc(), 1e-9));
        EXPECT_FALSE(again.save().written);
        EXPECT_EQ(slurp(s.script_path()), once);
    }
}
