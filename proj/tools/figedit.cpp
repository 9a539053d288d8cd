// figedit: compose figures from a FigScript file and write edits back to it.

#include "figedit/error.hpp"
#include "figedit/figscript.hpp"
#include "figedit/patcher.hpp"
#include "figedit/render.hpp"
#include "figedit/service.hpp"
#include "figedit/session.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace figedit;

void report(const std::string& where, const Error& e)
{
    std::cerr << where;
    if (e.line()) std::cerr << ":" << *e.line();
    if (e.column()) std::cerr << ":" << *e.column();
    std::cerr << ": error: " << to_string(e.kind());
    if (!e.message().empty()) std::cerr << ": " << e.message();
    std::cerr << "\n";
}

void print_warnings(const Session& s)
{
    for (const auto& w : s.warnings()) std::cerr << s.script_path().string() << ": warning: " << w << "\n";
}

int cmd_check(const std::string& script)
{
    Session s = Session::open(script);
    print_warnings(s);
    std::cout << script << ": ok (" << s.live_doc().axes.size() << " axes, " << s.tracker().size()
              << " generated statement(s))\n";
    return 0;
}

int cmd_render(const std::string& script, const std::string& output)
{
    Session s = Session::open(script);
    print_warnings(s);
    const RenderOutput out = render(s.live_doc());
    if (output == "-") {
        std::cout << out.svg_text;
    } else {
        write_atomic(output, out.svg_text);
    }
    return 0;
}

int cmd_apply(const std::string& script, const std::string& changes_file)
{
    Session s = Session::open(script, {.lock = true});
    print_warnings(s);
    const std::string text = read_file(changes_file);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        const ScriptLine line = parse_line(std::string_view(text).substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        try {
            if (line.kind == LineKind::Blank || line.kind == LineKind::Comment) continue;
            if (line.kind != LineKind::Statement) throw Error(ErrorKind::SyntaxError, "expected a statement");
            if (line.error) throw *line.error;
            s.edit(*line.statement);
        } catch (const Error& e) {
            report(changes_file, e.at_line(line_no));
            return 1;
        }
    }
    const SaveResult r = s.save();
    std::cout << (r.written ? "wrote " : "unchanged ") << r.path.string() << "\n";
    return 0;
}

int cmd_edit(const std::string& script, unsigned short port, bool no_browser, double snap_px)
{
    Session s = Session::open(script, {.lock = true});
    print_warnings(s);
    EditorService service(std::move(s), snap_px);
    HttpServer server(service, port);
    const std::string url = "http://127.0.0.1:" + std::to_string(server.port()) + "/";
    std::cout << "figedit: editing " << service.session().script_path().string() << " at " << url << "\n"
              << "press Ctrl+C to stop\n"
              << std::flush;
    if (!no_browser) {
        const std::string cmd = "xdg-open '" + url + "' >/dev/null 2>&1 &";
        [[maybe_unused]] int rc = std::system(cmd.c_str());
    }
    server.run();
    if (service.session().dirty()) std::cerr << "figedit: warning: unsaved changes were discarded\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Compose figures from FigScript files and write layout edits back as code"};
    app.require_subcommand(1);

    std::string script;
    std::string output = "-";
    std::string changes;
    unsigned short port = 7040;
    bool no_browser = false;
    double snap_px = figedit::kDefaultSnapPx;

    auto* edit = app.add_subcommand("edit", "Serve the interactive editor for a script");
    edit->add_option("script", script, "FigScript file")->required();
    edit->add_option("--port", port, "Port on 127.0.0.1")->capture_default_str();
    edit->add_flag("--no-browser", no_browser, "Do not open a browser window");
    edit->add_option("--snap-px", snap_px, "Snapping distance in pixels")->capture_default_str()->check(
        CLI::NonNegativeNumber);

    auto* rend = app.add_subcommand("render", "Render a script to SVG");
    rend->add_option("script", script, "FigScript file")->required();
    rend->add_option("-o,--output", output, "Output SVG path ('-' for stdout)")->required();

    auto* check = app.add_subcommand("check", "Parse and scan a script; exit 1 on any error");
    check->add_option("script", script, "FigScript file")->required();

    auto* apply = app.add_subcommand("apply", "Apply statements from a file and save the script");
    apply->add_option("script", script, "FigScript file")->required();
    apply->add_option("changes", changes, "File with one statement per line")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*edit) return cmd_edit(script, port, no_browser, snap_px);
        if (*rend) return cmd_render(script, output);
        if (*check) return cmd_check(script);
        if (*apply) return cmd_apply(script, changes);
    } catch (const figedit::Error& e) {
        report(script, e);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "figedit: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
