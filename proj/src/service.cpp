#include "figedit/service.hpp"

#include "figedit/doc_json.hpp"
#include "figedit/error.hpp"
#include "figedit/figscript.hpp"
#include "figedit/render.hpp"

#include <json.hpp>

namespace figedit {

using nlohmann::json;

std::string Event::to_json() const
{
    return json{{"type", type}, {"revision", revision}}.dump();
}

namespace {

ApiResponse json_response(int status, const json& j)
{
    return {status, "application/json", j.dump()};
}

ApiResponse error_response(int status, const Error& e)
{
    json err = {{"kind", to_string(e.kind())}, {"message", e.message()}};
    err["column"] = e.column() ? json(*e.column()) : json(nullptr);
    return json_response(status, {{"ok", false}, {"error", std::move(err)}});
}

ApiResponse bad_request(const std::string& message)
{
    return error_response(400, Error(ErrorKind::TypeMismatch, message));
}

Rect to_fraction(const PixelBox& b, const ViewTransform& vt)
{
    return {b.x / vt.width_px(), 1.0 - (b.y + b.h) / vt.height_px(), b.w / vt.width_px(), b.h / vt.height_px()};
}

json guides_json(const std::vector<Guide>& guides)
{
    json out = json::array();
    for (const auto& g : guides)
        out.push_back({{"orientation", to_string(g.orientation)}, {"position", g.position}, {"kind", to_string(g.kind)}});
    return out;
}

constexpr std::string_view kIndexPage = R"(<!DOCTYPE html>
<html><head><meta charset="utf-8"><title>figedit</title></head>
<body>
<div id="figure"></div>
<script>
async function refresh() {
  const r = await fetch('/api/svg');
  const j = await r.json();
  document.getElementById('figure').innerHTML = j.svg;
}
const ws = new WebSocket('ws://' + location.host + '/api/events');
ws.onmessage = () => refresh();
refresh();
</script>
</body></html>
)";

}  // namespace

EditorService::EditorService(Session session, double snap_px)
    : session_(std::move(session)), snap_px_(snap_px)
{
    refresh_snapshot();
}

void EditorService::refresh_snapshot()
{
    auto snap = std::make_shared<Snapshot>();
    snap->revision = revision_;
    const FigureDoc& doc = session_.live_doc();
    snap->doc_json = to_json(doc).dump();
    const RenderOutput out = render(doc);
    json elements = json::array();
    for (const auto& e : out.element_index)
        elements.push_back({{"path", e.path.to_text()},
                            {"box", {{"x", e.box.x}, {"y", e.box.y}, {"w", e.box.w}, {"h", e.box.h}}}});
    snap->svg_json = json{{"svg", out.svg_text}, {"elements", std::move(elements)}, {"revision", revision_}}.dump();
    std::lock_guard lock(snapshot_mutex_);
    snapshot_ = std::move(snap);
}

void EditorService::emit(const std::string& type)
{
    if (on_event) on_event(Event{type, revision_});
}

ApiResponse EditorService::handle(std::string_view method, std::string_view target, std::string_view body)
{
    if (auto q = target.find('?'); q != std::string_view::npos) target = target.substr(0, q);
    try {
        if (method == "GET" && target == "/api/doc") return get_doc();
        if (method == "GET" && target == "/api/svg") return get_svg();
        if (method == "POST" && target == "/api/edit") return post_edit(body);
        if (method == "POST" && target == "/api/drag") return post_drag(body);
        if (method == "POST" && target == "/api/save") return post_save();
        if (method == "GET" && (target == "/" || target == "/index.html"))
            return {200, "text/html; charset=utf-8", std::string(kIndexPage)};
    } catch (const Error& e) {
        return error_response(400, e);
    } catch (const json::exception& e) {
        return bad_request(std::string("malformed request body: ") + e.what());
    }
    return json_response(404, {{"ok", false}, {"error", {{"kind", "NotFound"}, {"message", std::string(target)}}}});
}

ApiResponse EditorService::get_doc() const
{
    std::shared_ptr<const Snapshot> snap;
    {
        std::lock_guard lock(snapshot_mutex_);
        snap = snapshot_;
    }
    return {200, "application/json", snap->doc_json};
}

ApiResponse EditorService::get_svg() const
{
    std::shared_ptr<const Snapshot> snap;
    {
        std::lock_guard lock(snapshot_mutex_);
        snap = snapshot_;
    }
    return {200, "application/json", snap->svg_json};
}

ApiResponse EditorService::post_edit(std::string_view body)
{
    const json req = json::parse(body);
    if (!req.contains("statement") || !req["statement"].is_string()) return bad_request("expected {statement: string}");
    const auto created = session_.edit(req["statement"].get<std::string>());
    ++revision_;
    refresh_snapshot();
    emit("doc-changed");
    json resp = {{"ok", true}, {"revision", revision_}};
    resp["created"] = created ? json(created->to_text()) : json(nullptr);
    return json_response(200, resp);
}

ApiResponse EditorService::post_drag(std::string_view body)
{
    const json req = json::parse(body);
    const ObjectPath path = parse_path(req.at("path").get<std::string>());
    const double dx = req.at("dx_px").get<double>();
    const double dy = req.at("dy_px").get<double>();
    const std::string mode_name = req.value("mode", "move");
    DragMode mode = DragMode::move();
    if (mode_name == "resize") {
        Handle h{};
        if (!req.contains("handle") || !parse_handle(req["handle"].get<std::string>(), h))
            return bad_request("resize needs a handle: n, s, e, w, ne, nw, se or sw");
        mode = DragMode::resize(h);
    } else if (mode_name != "move") {
        return bad_request("mode must be move or resize");
    }

    const FigureDoc& doc = session_.live_doc();
    const ViewTransform vt = ViewTransform::of(doc);
    resolve_path(doc, path);
    Statement st;
    st.path = path;
    std::vector<Guide> guides;

    switch (path.target_kind()) {
    case TargetKind::Axes: {
        const std::size_t i = path.axes_index();
        std::vector<Rect> peers;
        for (std::size_t k = 0; k < doc.axes.size(); ++k)
            if (k != i) peers.push_back(doc.axes[k].position);
        const Rect moved = drag(doc.axes[i].position, dx, dy, mode, vt);
        const SnapResult snapped = snap(moved, peers, snap_px_, vt, mode);
        guides = snapped.guides;
        const Rect& r = snapped.rect;
        st.method = "set_position";
        st.args = {Literal(Literal::List{r.x, r.y, r.w, r.h})};
        break;
    }
    case TargetKind::Legend: {
        if (mode.kind != DragMode::Kind::Move) return bad_request("legends can only be moved");
        const std::size_t i = path.axes_index();
        const PixelBox ab = axes_box(doc, i);
        if (ab.w <= 0.0 || ab.h <= 0.0) return bad_request("axes has no area");
        std::vector<Rect> peers{doc.axes[i].position};
        for (std::size_t k = 0; k < doc.axes.size(); ++k)
            if (k != i && doc.axes[k].legend && doc.axes[k].legend->visible)
                peers.push_back(to_fraction(legend_box(doc, k), vt));
        const Rect moved = drag(to_fraction(legend_box(doc, i), vt), dx, dy, mode, vt);
        const SnapResult snapped = snap(moved, peers, snap_px_, vt, mode);
        guides = snapped.guides;
        const double left_px = snapped.rect.x * vt.width_px();
        const double bottom_px = (1.0 - snapped.rect.y) * vt.height_px();
        st.method = "set_loc_fraction";
        st.args = {Literal((left_px - ab.x) / ab.w), Literal((ab.y + ab.h - bottom_px) / ab.h)};
        break;
    }
    case TargetKind::Text: {
        if (mode.kind != DragMode::Kind::Move) return bad_request("texts can only be moved");
        const std::size_t i = path.axes_index();
        const PixelBox ab = axes_box(doc, i);
        if (ab.w <= 0.0 || ab.h <= 0.0) return bad_request("axes has no area");
        const TextNode& t = doc.axes[i].texts[path.segments()[1].index];
        st.method = "set_position";
        st.args = {Literal(t.x + dx / ab.w), Literal(t.y - dy / ab.h)};
        break;
    }
    default: return bad_request("only axes, legends and texts can be dragged");
    }
    return json_response(200, {{"statement", emit_statement(st)}, {"guides", guides_json(guides)}});
}

ApiResponse EditorService::post_save()
{
    const SaveResult r = session_.save();
    emit("saved");
    return json_response(200, {{"written", r.written}, {"path", r.path.string()}});
}

}  // namespace figedit
