#include "granet/channels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace granet {

ChannelCatalog::ChannelCatalog(std::vector<Channel> channels)
    : channels_(std::move(channels)) {
    if (channels_.empty()) {
        throw ConfigError("channel catalog is empty");
    }
    std::set<std::string> names;
    for (const auto& ch : channels_) {
        if (ch.name.empty()) throw ConfigError("channel with empty name");
        if (!names.insert(ch.name).second) {
            throw ConfigError("duplicate channel name '" + ch.name + "'");
        }
    }
}

ChannelCatalog ChannelCatalog::builtin() {
    return ChannelCatalog({
        {"People's Daily Online, Xinhua News Agency", Interval(9, 10)},
        {"CAIJING.com.cn", Interval(7, 9)},
        {"China Cultural Tourism Network", Interval(6, 7)},
        {"Tencent News, Toutiao", Interval(5, 10)},
        {"www.legaldaily.com.cn", Interval(3, 4)},
        {"zol.com.cn", Interval(2, 4)},
        {"www.JYB.cn", Interval(3, 12)},
        {"www.81.cn", Interval(1, 2)},
        {"www.huanqiu.com, www.haiwainet.cn", Interval(1, 6)},
        {"weibo.com", Interval(3, 10)},
    });
}

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_endpoint(const std::string& text, std::size_t line_no) {
    std::string cell = strip(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        throw ParseError("catalog line " + std::to_string(line_no) + ": '" + cell +
                         "' is not a finite number");
    }
    return value;
}

}  // namespace

ChannelCatalog load_catalog(const std::string& path) {
    std::ifstream file(path);
    if (!file.is_open()) {
        throw IoError("cannot open catalog file '" + path + "'");
    }
    std::vector<Channel> channels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        std::string body = strip(line);
        if (body.empty() || body.front() == '#') continue;
        // Channel names may contain commas, so the numeric fields anchor at
        // the end: everything before the second-to-last comma is the name.
        std::size_t last = body.rfind(',');
        std::size_t second = last == std::string::npos ? std::string::npos
                                                       : body.rfind(',', last - 1);
        if (second == std::string::npos || second == 0) {
            throw ParseError("catalog line " + std::to_string(line_no) +
                             ": expected 'name,lo,hi'");
        }
        std::string name = strip(body.substr(0, second));
        double lo = parse_endpoint(body.substr(second + 1, last - second - 1), line_no);
        double hi = parse_endpoint(body.substr(last + 1), line_no);
        try {
            channels.push_back({name, Interval(lo, hi)});
        } catch (const InvalidInputError& e) {
            throw ParseError("catalog line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return ChannelCatalog(std::move(channels));
}

double match_degree(const Interval& a, const Interval& b) {
    double overlap = std::min(a.hi(), b.hi()) - std::max(a.lo(), b.lo());
    if (overlap < 0.0) return 0.0;  // disjoint
    double union_len = a.width() + b.width() - overlap;
    if (union_len == 0.0) return 1.0;  // two identical points
    if (overlap == 0.0) {
        // A bare point inside (or on the edge of) a wider interval.
        if (a.width() == 0.0 && contains(b, a.lo())) return 1.0 / (b.width() + 1.0);
        if (b.width() == 0.0 && contains(a, b.lo())) return 1.0 / (a.width() + 1.0);
        return 0.0;  // two wide intervals merely touching
    }
    return overlap / union_len;
}

std::vector<Recommendation> recommend(const Interval& news, const ChannelCatalog& catalog,
                                      std::size_t top_k) {
    if (top_k == 0) {
        throw InvalidInputError("recommend: top_k must be at least 1");
    }
    struct Scored {
        const Channel* channel;
        double degree;
    };
    std::vector<Scored> scored;
    scored.reserve(catalog.size());
    for (const auto& ch : catalog.channels()) {
        scored.push_back({&ch, match_degree(news, ch.target)});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& x, const Scored& y) {
        if (x.degree != y.degree) return x.degree > y.degree;
        if (x.channel->target.width() != y.channel->target.width()) {
            return x.channel->target.width() < y.channel->target.width();
        }
        return x.channel->name < y.channel->name;
    });
    std::vector<Recommendation> out;
    out.reserve(std::min(top_k, scored.size()));
    for (const auto& s : scored) {
        if (out.size() == top_k) break;
        out.push_back({s.channel->name, s.degree});
    }
    return out;
}

}  // namespace granet
