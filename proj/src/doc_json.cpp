#include "figedit/doc_json.hpp"

namespace figedit {

using nlohmann::json;

namespace {

json ticks_json(const std::optional<TickSet>& t)
{
    if (!t) return nullptr;
    json j;
    j["locations"] = t->locations;
    j["labels"] = t->labels ? json(*t->labels) : json(nullptr);
    return j;
}

json text_json(const TextNode& t)
{
    return {
        {"x", t.x},
        {"y", t.y},
        {"content", t.content},
        {"fontsize_pt", t.fontsize_pt},
        {"color", t.color},
        {"rotation_deg", t.rotation_deg},
        {"weight", to_string(t.weight)},
    };
}

json series_json(const SeriesNode& s)
{
    json points = json::array();
    for (const auto& p : s.points) points.push_back({p.x, p.y});
    return {
        {"source", {{"path", s.source.path}, {"xcol", s.source.xcol}, {"ycol", s.source.ycol}}},
        {"points", std::move(points)},
        {"color", s.color},
        {"linewidth_pt", s.linewidth_pt},
    };
}

}  // namespace

json to_json(const Rect& r)
{
    return {{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}};
}

json to_json(const AxesNode& ax)
{
    json series = json::array();
    for (const auto& s : ax.series) series.push_back(series_json(s));
    json texts = json::array();
    for (const auto& t : ax.texts) texts.push_back(text_json(t));
    json legend = nullptr;
    if (ax.legend) legend = {{"loc", {ax.legend->loc.x, ax.legend->loc.y}}, {"visible", ax.legend->visible}};
    return {
        {"position", to_json(ax.position)},
        {"xlim", {ax.xlim.lo, ax.xlim.hi}},
        {"ylim", {ax.ylim.lo, ax.ylim.hi}},
        {"xlabel", ax.xlabel},
        {"ylabel", ax.ylabel},
        {"title", ax.title},
        {"xticks", ticks_json(ax.xticks)},
        {"yticks", ticks_json(ax.yticks)},
        {"series", std::move(series)},
        {"texts", std::move(texts)},
        {"legend", std::move(legend)},
        {"grid", ax.grid},
    };
}

json to_json(const FigureDoc& doc)
{
    json axes = json::array();
    for (const auto& ax : doc.axes) axes.push_back(to_json(ax));
    return {
        {"index", doc.index},
        {"width_cm", doc.width_cm},
        {"height_cm", doc.height_cm},
        {"dpi", doc.dpi},
        {"axes", std::move(axes)},
    };
}

}  // namespace figedit
