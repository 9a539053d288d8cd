#include "figedit/error.hpp"
#include "figedit/figmodel.hpp"
#include "figedit/figscript.hpp"
#include "figedit/geometry.hpp"
#include "figedit/patcher.hpp"
#include "figedit/render.hpp"
#include "figedit/session.hpp"
#include "figedit/tracker.hpp"

#include "support/generators.hpp"
#include "support/snap_oracle.hpp"
#include "support/temp_dir.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace figedit;
using figedit::testing::Rng;
using figedit::testing::TempDir;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Collects the first few failure messages of one criterion.
class Check {
public:
    void fail(const std::string& what)
    {
        if (failures_++ < 5) messages_ += (messages_.empty() ? "" : "; ") + what;
    }
    void expect(bool ok, const std::string& what)
    {
        if (!ok) fail(what);
    }
    Outcome done(const std::string& summary) const
    {
        if (failures_ == 0) return {true, summary};
        return {false, std::to_string(failures_) + " failure(s): " + messages_};
    }

private:
    std::size_t failures_ = 0;
    std::string messages_;
};

std::vector<std::string> lines_with_endings(const std::string& text)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        nl = nl == std::string::npos ? text.size() : nl + 1;
        out.push_back(text.substr(pos, nl - pos));
        pos = nl;
    }
    return out;
}

std::string strip_eol(std::string s)
{
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

/// Applies up to `n` random edits; rejected edits are skipped.
std::size_t random_edits(Rng& rng, Session& s, std::size_t n)
{
    std::size_t applied = 0;
    for (std::size_t k = 0; k < n; ++k) {
        try {
            s.edit(figedit::testing::random_edit(rng, s.live_doc()));
            ++applied;
        } catch (const Error&) {
        }
    }
    return applied;
}

// Save-once idempotence and semantic round-trip share the same sessions.
struct SessionRun {
    Outcome idempotence;
    Outcome round_trip;
};

SessionRun session_criteria()
{
    Rng rng(20240601);
    Check idem;
    Check trip;
    std::size_t edits = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 200; ++i) {
        TempDir dir;
        dir.write("data.csv", figedit::testing::sample_csv());
        const auto path = dir.write("s.fig", figedit::testing::random_script(rng));
        try {
            Session s = Session::open(path);
            edits += random_edits(rng, s, 1 + figedit::testing::pick(rng, 50));
            s.save();
            const std::string first = figedit::testing::slurp(path);
            s.save();
            idem.expect(figedit::testing::slurp(path) == first, "save->save differs in session " + std::to_string(i));

            Session reopened = Session::open(path);
            trip.expect(approx_equal(reopened.live_doc(), s.live_doc(), 1e-9),
                        "live doc differs after reopen in session " + std::to_string(i));
            reopened.save();
            idem.expect(figedit::testing::slurp(path) == first,
                        "save->open->save differs in session " + std::to_string(i));
        } catch (const Error& e) {
            idem.fail("session " + std::to_string(i) + ": " + e.what());
            trip.fail("session " + std::to_string(i) + ": " + e.what());
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    idem.expect(secs < 30.0, "runtime " + std::to_string(secs) + " s");
    std::ostringstream summary;
    summary << "200 sessions, " << edits << " applied edits, " << secs << " s";
    return {idem.done(summary.str()), trip.done("200 sessions at 1e-9")};
}

Outcome overwrite_rule()
{
    Rng rng(7);
    Check c;
    std::size_t repeats = 0;
    for (int i = 0; i < 300; ++i) {
        TempDir dir;
        dir.write("data.csv", figedit::testing::sample_csv());
        Session s = Session::open(dir.write("s.fig", figedit::testing::random_script(rng)));
        // Oracle: last applied line per (target, command), built from the edits alone.
        std::map<std::pair<std::string, std::string>, std::string> last;
        for (std::size_t n = 1 + figedit::testing::pick(rng, 80); n > 0; --n) {
            Statement st = parse_statement(figedit::testing::random_edit(rng, s.live_doc()));
            std::optional<ObjectPath> created;
            try {
                created = s.edit(st);
            } catch (const Error&) {
                continue;
            }
            for (auto& a : st.args) a = canonical_literal(a);
            const auto key = std::make_pair(created.value_or(*st.path).to_text(), st.method);
            repeats += last.count(key);
            last[key] = emit_statement(st);
        }
        const auto block = s.tracker().emit_block();
        std::multiset<std::string> emitted(block.begin() + 1, block.end() - 1);
        std::multiset<std::string> expected;
        for (const auto& [k, v] : last) expected.insert(v);
        c.expect(emitted.size() == last.size(), "run " + std::to_string(i) + ": " + std::to_string(emitted.size()) +
                                                    " lines for " + std::to_string(last.size()) + " keys");
        c.expect(emitted == expected, "run " + std::to_string(i) + ": emitted lines differ from last-applied");
    }
    c.expect(repeats > 0, "no repeated keys generated");
    return c.done("300 sequences, " + std::to_string(repeats) + " overwrites");
}

Outcome insertion_position()
{
    Rng rng(11);
    Check c;
    for (int i = 0; i < 2000; ++i) {
        std::string script = figedit::testing::random_script(rng);
        if (figedit::testing::chance(rng, 0.25)) {
            std::string crlf;
            for (char ch : script) crlf += ch == '\n' ? std::string("\r\n") : std::string(1, ch);
            script = crlf;
        }
        const PatchedScript before = scan(script);
        const auto block = figedit::testing::random_tracker(rng, 15).emit_block();
        const std::string out = splice(before, block);
        const PatchedScript after = scan(out);
        const std::string tag = "script " + std::to_string(i);
        if (!after.block_span) {
            c.fail(tag + ": no block");
            continue;
        }
        c.expect(after.block_span->start == before.marker_line, tag + ": block does not start at the old marker");
        c.expect(after.block_span->end + 1 == after.marker_line, tag + ": end sentinel not directly before marker");

        // Line-diff oracle: without the block lines, the output is the input byte for byte.
        const auto out_lines = lines_with_endings(out);
        const auto in_lines = lines_with_endings(script);
        std::vector<std::string> rest;
        std::vector<std::string> inserted;
        for (std::size_t k = 0; k < out_lines.size(); ++k) {
            if (k >= after.block_span->start && k <= after.block_span->end)
                inserted.push_back(strip_eol(out_lines[k]));
            else
                rest.push_back(out_lines[k]);
        }
        c.expect(rest == in_lines, tag + ": non-block lines changed");
        c.expect(inserted == block, tag + ": inserted lines differ from the block");
    }
    return c.done("2000 scripts");
}

Outcome self_contained()
{
    Rng rng(13);
    Check c;
    std::size_t lines = 0;
    std::size_t unknown = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto block = figedit::testing::random_tracker(rng).emit_block();
        const auto interior = figedit::testing::interior(block);
        for (const auto& line : interior) {
            ++lines;
            try {
                const Statement st = parse_statement(line);
                if (!find_method(st.path->target_kind(), st.method)) {
                    ++unknown;
                    c.fail("unknown method in: " + line);
                }
                check_signature(st);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::UnknownMethod) ++unknown;
                c.fail(line + ": " + e.what());
            }
        }
        try {
            const auto records = parse_block(interior);
            c.expect(records.size() == interior.size(), "record count differs");
        } catch (const Error& e) {
            c.fail(std::string("block rejected: ") + e.what());
        }
    }
    c.expect(unknown == 0, std::to_string(unknown) + " unknown methods");
    return c.done("10000 trackers, " + std::to_string(lines) + " lines, 0 unknown methods");
}

FigureDoc grid_doc(std::size_t na, std::size_t nt)
{
    FigureDoc doc;
    for (std::size_t i = 0; i < na; ++i) {
        AxesNode ax;
        ax.position = {0.1 * static_cast<double>(i), 0.1, 0.2, 0.2};
        ax.texts.resize(nt);
        ax.series.resize(i % 2 + 1);
        if (i % 2 == 0) ax.legend = LegendNode{};
        doc.axes.push_back(ax);
    }
    return doc;
}

Outcome path_round_trip()
{
    Check c;
    std::size_t checked = 0;
    for (std::size_t na = 0; na <= 3; ++na) {
        for (std::size_t nt = 0; nt <= 3; ++nt) {
            const FigureDoc doc = grid_doc(na, nt);
            // Independent enumeration of every element by pointer.
            std::vector<ElementRef> elements{&doc};
            for (const auto& ax : doc.axes) {
                elements.emplace_back(&ax);
                for (const auto& s : ax.series) elements.emplace_back(&s);
                for (const auto& t : ax.texts) elements.emplace_back(&t);
                if (ax.legend) elements.emplace_back(&*ax.legend);
            }
            const auto paths = enumerate_paths(doc);
            c.expect(paths.size() == elements.size(), "enumeration size differs");
            for (const auto& e : elements) {
                ++checked;
                const ObjectPath p = serialize_path(doc, e);
                c.expect(resolve_path(doc, p) == e, "resolve(serialize(e)) != e for " + p.to_text());
                c.expect(parse_path(p.to_text()) == p, "text round-trip failed for " + p.to_text());
            }
            for (const auto& p : paths)
                c.expect(serialize_path(doc, resolve_path(doc, p)) == p, "serialize(resolve(p)) != p for " + p.to_text());
        }
    }
    return c.done(std::to_string(checked) + " elements over 16 docs");
}

Outcome snapping()
{
    using figedit::testing::uniform;
    const ViewTransform vt{16.0, 12.0, 100.0};
    Check c;
    Rng rng(19);
    const Handle handles[] = {Handle::N, Handle::S, Handle::E, Handle::W, Handle::NE, Handle::NW, Handle::SE, Handle::SW};
    auto random_rect = [&] {
        return Rect{uniform(rng, 0, 0.8), uniform(rng, 0, 0.8), uniform(rng, 0.05, 0.4), uniform(rng, 0.05, 0.4)};
    };
    for (int i = 0; i < 10000; ++i) {
        const Rect r = random_rect();
        std::vector<Rect> peers;
        for (std::size_t n = figedit::testing::pick(rng, 5); n > 0; --n) peers.push_back(random_rect());
        const double threshold = uniform(rng, 0, 30);
        const bool move = figedit::testing::chance(rng, 0.5);
        const DragMode mode = move ? DragMode::move() : DragMode::resize(handles[figedit::testing::pick(rng, 8)]);
        const SnapResult s = snap(r, peers, threshold, vt, mode);
        const double tol = 1e-9;
        const bool within = std::fabs(s.rect.x - r.x) * vt.width_px() <= threshold + tol &&
                            std::fabs(s.rect.right() - r.right()) * vt.width_px() <= threshold + tol &&
                            std::fabs(s.rect.y - r.y) * vt.height_px() <= threshold + tol &&
                            std::fabs(s.rect.top() - r.top()) * vt.height_px() <= threshold + tol;
        c.expect(within, "edge moved beyond threshold in case " + std::to_string(i));
        for (const auto& g : s.guides)
            c.expect(figedit::testing::guide_holds(g, s.rect, peers), "guide not exact in case " + std::to_string(i));
        c.expect(snap(s.rect, peers, threshold, vt, mode).rect == s.rect, "not idempotent in case " + std::to_string(i));
        if (move) {
            std::vector<std::pair<double, double>> px, py;
            for (const auto& p : peers) {
                px.emplace_back(p.x, p.w);
                py.emplace_back(p.y, p.h);
            }
            const auto ox = figedit::testing::move_oracle(r.x, r.w, px, threshold, vt.width_px());
            const auto oy = figedit::testing::move_oracle(r.y, r.h, py, threshold, vt.height_px());
            c.expect(std::fabs(s.rect.x - (ox.snapped ? ox.lo : r.x)) <= 1e-12 &&
                         std::fabs(s.rect.y - (oy.snapped ? oy.lo : r.y)) <= 1e-12,
                     "differs from brute-force oracle in case " + std::to_string(i));
        }
    }

    {
        const Rect r{0.305, 0.5, 0.2, 0.2};
        const double threshold = 0.01 * vt.width_px();
        const auto oracle = figedit::testing::move_oracle(r.x, r.w, {{0.30, 0.3}}, threshold, vt.width_px());
        const SnapResult s = snap(r, std::vector<Rect>{{0.30, 0.1, 0.3, 0.2}}, threshold, vt);
        c.expect(oracle.snapped && std::fabs(s.rect.x - oracle.lo) <= 1e-12 && std::fabs(s.rect.x - 0.30) <= 1e-12,
                 "edge case: x " + std::to_string(s.rect.x));
        c.expect(s.guides.size() == 1 && s.guides[0].kind == GuideKind::Edge &&
                     s.guides[0].orientation == Orientation::Vertical,
                 "edge case: guides");
    }
    {
        const Rect r{0.32, 0.5, 0.2, 0.2};
        const double threshold = 0.021 * vt.width_px();
        const auto oracle =
            figedit::testing::move_oracle(r.x, r.w, {{0.40, 0.5}, {0.44, 0.5}}, threshold, vt.width_px());
        const SnapResult s = snap(r, std::vector<Rect>{{0.40, 0.05, 0.5, 0.1}, {0.44, 0.05, 0.5, 0.1}}, threshold, vt);
        c.expect(oracle.snapped && std::fabs(s.rect.x - oracle.lo) <= 1e-12 &&
                     std::fabs(s.rect.x + s.rect.w / 2 - 0.40) <= 1e-12,
                 "tie case: centre " + std::to_string(s.rect.x + s.rect.w / 2));
        c.expect(s.guides.size() == 1 && s.guides[0].kind == GuideKind::Center, "tie case: guides");
    }
    return c.done("10000 random cases and 2 constructed cases");
}

bool near_box(const PixelBox& b, double x, double y, double w, double h)
{
    return std::fabs(b.x - x) <= 0.5 && std::fabs(b.y - y) <= 0.5 && std::fabs(b.w - w) <= 0.5 &&
           std::fabs(b.h - h) <= 0.5;
}

bool contains(const PixelBox& b, double x, double y)
{
    return x >= b.x - 0.5 && x <= b.x + b.w + 0.5 && y >= b.y - 0.5 && y <= b.y + b.h + 0.5;
}

/// Element-index boxes against geometry recomputed from the model.
void check_boxes(Check& c, const FigureDoc& doc, const RenderOutput& out, const std::string& tag)
{
    const double W = doc.width_cm / 2.54 * doc.dpi;
    const double H = doc.height_cm / 2.54 * doc.dpi;
    std::map<std::string, PixelBox> boxes;
    for (const auto& e : out.element_index) boxes[e.path.to_text()] = e.box;
    std::size_t expected = 0;
    for (std::size_t i = 0; i < doc.axes.size(); ++i) {
        const AxesNode& ax = doc.axes[i];
        const std::string ap = "figure(" + std::to_string(doc.index) + ").axes[" + std::to_string(i) + "]";
        const double x = ax.position.x * W;
        const double y = (1.0 - ax.position.y - ax.position.h) * H;
        const double w = ax.position.w * W;
        const double h = ax.position.h * H;
        ++expected;
        c.expect(boxes.count(ap) && near_box(boxes[ap], x, y, w, h), tag + ": axes box " + ap);
        for (std::size_t k = 0; k < ax.series.size(); ++k) {
            ++expected;
            const std::string sp = ap + ".lines[" + std::to_string(k) + "]";
            if (!boxes.count(sp)) {
                c.fail(tag + ": missing " + sp);
                continue;
            }
            const PixelBox& b = boxes[sp];
            c.expect(b.x >= x - 0.5 && b.y >= y - 0.5 && b.x + b.w <= x + w + 0.5 && b.y + b.h <= y + h + 0.5,
                     tag + ": series box outside axes " + sp);
            const double xs = ax.xlim.hi - ax.xlim.lo;
            const double ys = ax.ylim.hi - ax.ylim.lo;
            for (const auto& p : ax.series[k].points) {
                const double u = (p.x - ax.xlim.lo) / xs;
                const double v = (p.y - ax.ylim.lo) / ys;
                if (u < 0 || u > 1 || v < 0 || v > 1) continue;
                c.expect(contains(b, x + u * w, y + h - v * h), tag + ": in-range point outside " + sp);
            }
        }
        for (std::size_t j = 0; j < ax.texts.size(); ++j) {
            ++expected;
            const std::string tp = ap + ".texts[" + std::to_string(j) + "]";
            const TextNode& t = ax.texts[j];
            c.expect(boxes.count(tp) && contains(boxes[tp], x + t.x * w, y + h - t.y * h), tag + ": text anchor " + tp);
        }
        if (ax.legend && ax.legend->visible) {
            ++expected;
            const std::string lp = ap + ".legend";
            const bool ok = boxes.count(lp) && std::fabs(boxes[lp].x - (x + ax.legend->loc.x * w)) <= 0.5 &&
                            std::fabs(boxes[lp].y + boxes[lp].h - (y + h - ax.legend->loc.y * h)) <= 0.5;
            c.expect(ok, tag + ": legend corner " + lp);
        }
    }
    c.expect(out.element_index.size() == expected, tag + ": element index size");
}

Outcome render_determinism()
{
    Check c;
    const std::filesystem::path fixture = std::filesystem::path(FIGEDIT_FIXTURES) / "sample.fig";
    const Session sample = Session::open(fixture);
    const std::string golden = figedit::testing::slurp(std::filesystem::path(FIGEDIT_GOLDEN) / "sample.svg");
    const RenderOutput first = render(sample.live_doc());
    c.expect(first.svg_text == golden, "fixture render differs from the recorded golden SVG");
    for (int run = 0; run < 10; ++run)
        c.expect(render(sample.live_doc()).svg_text == first.svg_text, "fixture render differs on run " +
                                                                           std::to_string(run));
    check_boxes(c, sample.live_doc(), first, "fixture");

    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        TempDir dir;
        dir.write("data.csv", figedit::testing::sample_csv());
        Session s = Session::open(dir.write("s.fig", figedit::testing::random_script(rng)));
        random_edits(rng, s, 1 + figedit::testing::pick(rng, 30));
        const FigureDoc copy = s.live_doc();
        const RenderOutput ref = render(s.live_doc());
        for (int run = 0; run < 10; ++run) {
            const RenderOutput again = render(run % 2 ? copy : s.live_doc());
            c.expect(again.svg_text == ref.svg_text, "doc " + std::to_string(i) + " differs on run " +
                                                         std::to_string(run));
        }
        check_boxes(c, s.live_doc(), ref, "doc " + std::to_string(i));
    }
    return c.done("fixture matches golden, 101 docs x 10 runs, boxes within 0.5 px");
}

}  // namespace

int main()
{
    std::vector<std::pair<std::string, Outcome>> results;
    auto run = [&](const std::string& name, const std::function<Outcome()>& fn) {
        try {
            results.emplace_back(name, fn());
        } catch (const std::exception& e) {
            results.emplace_back(name, Outcome{false, std::string("exception: ") + e.what()});
        }
    };

    SessionRun sessions;
    try {
        sessions = session_criteria();
    } catch (const std::exception& e) {
        sessions = {{false, e.what()}, {false, e.what()}};
    }
    results.emplace_back("save-once idempotence", sessions.idempotence);
    run("overwrite rule", overwrite_rule);
    results.emplace_back("semantic round-trip", sessions.round_trip);
    run("insertion position", insertion_position);
    run("self-contained generated code", self_contained);
    run("path round-trip", path_round_trip);
    run("snapping", snapping);
    run("render determinism", render_determinism);

    bool all = true;
    for (const auto& [name, o] : results) {
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << "\n";
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
