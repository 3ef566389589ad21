// surfdecide command-line tool.
// Exit codes: 0 success (Unknown verdicts included), 2 parse error,
// 3 validation/precondition error, 4 internal error.

#include <surfdecide/constructions.hpp>
#include <surfdecide/decide.hpp>
#include <surfdecide/json_io.hpp>
#include <surfdecide/parse.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace surfdecide;
using json = nlohmann::json;

namespace {

enum ExitCode { Ok = 0, ParseFailure = 2, ValidationFailure = 3, InternalFailure = 4 };

struct Failure {
    int code;
    std::string kind;
    std::string message;
    std::optional<std::size_t> offset;
};

/// Runs `body`, mapping library exceptions to exit codes.
template <class F>
std::optional<Failure> guarded(F&& body) {
    try {
        body();
        return std::nullopt;
    } catch (const ParseError& e) {
        return Failure{ParseFailure, "parse", e.describe(), e.offset};
    } catch (const DecisionError& e) {
        return Failure{ValidationFailure, to_string(e.kind), e.what(), {}};
    } catch (const PresetError& e) {
        return Failure{ValidationFailure, "preset", e.what(), {}};
    } catch (const OutOfTable& e) {
        return Failure{ValidationFailure, "out-of-table", e.what(), {}};
    } catch (const NoWitness& e) {
        return Failure{ValidationFailure, "no-witness", e.what(), {}};
    } catch (const std::invalid_argument& e) {
        return Failure{ValidationFailure, "invalid-argument", e.what(), {}};
    } catch (const std::exception& e) {
        return Failure{InternalFailure, "internal", e.what(), {}};
    }
}

json failure_json(const Failure& f) {
    json j{{"error", f.kind}, {"message", f.message}, {"exit_code", f.code}};
    if (f.offset) j["offset"] = *f.offset;
    return j;
}

struct Output {
    bool as_json = false;

    void emit(const std::string& text, const json& j) const {
        if (as_json)
            std::cout << j.dump(2) << '\n';
        else
            std::cout << text << '\n';
    }
};

std::string big(const BigInt& b) { return b.str(); }

json ordinal_json(const Ordinal& o) {
    json terms = json::array();
    for (const auto& t : o.terms()) terms.push_back({{"exponent", t.exp().to_string()}, {"coefficient", t.coefficient}});
    return {{"cnf", o.to_string()}, {"terms", terms}};
}

json matrix_json(const IntegerMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(big(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

/// Rows separated by `;`, entries by whitespace, e.g. `2 4; 6 8`.
IntegerMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<BigInt>> rows{{}};
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
        } else if (ch == ';') {
            rows.emplace_back();
            ++i;
        } else if (ch == '-' || std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i + 1;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j == i + 1 && ch == '-') throw ParseError(j, {"digit"}, "expected digits after '-'");
            rows.back().emplace_back(text.substr(i, j - i));
            i = j;
        } else {
            throw ParseError(i, {"integer", "';'"}, "unexpected character in matrix");
        }
    }
    if (rows.size() == 1 && rows[0].empty()) throw ParseError(0, {"integer"}, "empty matrix");
    for (const auto& r : rows)
        if (r.size() != rows[0].size()) throw ParseError(text.size(), {}, "rows have different lengths");
    return IntegerMatrix::from_rows(rows);
}

/// Replaces each Yes witness by its verified form.
Verdict with_witnesses(Verdict v) {
    for (int q = 1; q <= 3; ++q) {
        auto& a = q == 1 ? v.qI : q == 2 ? v.qII : v.qIII;
        if (a.is_yes()) a.witness = witness_for(v, q);
    }
    return v;
}

std::string verdict_text(const Verdict& v) {
    std::ostringstream os;
    os << "I:   " << summary(v.qI) << '\n';
    os << "II:  " << summary(v.qII) << '\n';
    os << "III: " << summary(v.qIII) << '\n';
    os << "genus=" << v.derived.genus.to_string() << " punctures=" << v.derived.punctures.to_string()
       << " mixed_end=" << (v.derived.mixed_end ? "yes" : "no") << " ends=" << v.derived.ends;
    for (const auto* a : {&v.qI, &v.qII, &v.qIII})
        if (a->witness && a->witness->verified) {
            os << "\nwitness: " << a->witness->computation;
            break;
        }
    for (const auto& n : v.derived.notes) os << "\nnote: " << n;
    return os.str();
}

/// One verdict (or inline error) per input line, in input order.
int decide_batch(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << '\n';
        return ValidationFailure;
    }
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);

    std::vector<std::string> out(lines.size());
    std::vector<int> codes(lines.size(), Ok);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < lines.size();) {
            json j;
            const auto fail = guarded([&] { j = to_json(with_witnesses(decide(parse_surface(lines[i])))); });
            if (fail) {
                j = failure_json(*fail);
                codes[i] = fail->code;
            }
            j["line"] = i + 1;
            out[i] = j.dump();
        }
    };
    const unsigned n = std::clamp(std::thread::hardware_concurrency(), 1u, 16u);
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();

    for (const auto& s : out) std::cout << s << '\n';
    return *std::max_element(codes.begin(), codes.end(), [](int a, int b) { return a < b; });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Support questions for the homology of big mapping class groups"};
    app.require_subcommand(1);
    Output out;
    app.add_flag("--json", out.as_json, "emit JSON");

    std::function<void()> action;
    int result = Ok;

    // ord
    auto* ord = app.add_subcommand("ord", "ordinals below epsilon_0")->require_subcommand(1);
    std::string ord_a, ord_b;
    auto* ord_eval = ord->add_subcommand("eval", "print Cantor normal form");
    ord_eval->add_option("ordinal", ord_a)->required();
    ord_eval->callback([&] {
        action = [&] {
            const auto o = parse_ordinal(ord_a);
            out.emit(o.to_string(), ordinal_json(o));
        };
    });
    auto* ord_cmp = ord->add_subcommand("compare", "compare two ordinals");
    ord_cmp->add_option("a", ord_a)->required();
    ord_cmp->add_option("b", ord_b)->required();
    ord_cmp->callback([&] {
        action = [&] {
            const auto c = compare(parse_ordinal(ord_a), parse_ordinal(ord_b));
            const char* s = c < 0 ? "<" : c > 0 ? ">" : "=";
            out.emit(s, {{"result", s}});
        };
    });

    // ends
    auto* ends = app.add_subcommand("ends", "end-space expressions")->require_subcommand(1);
    std::string e_a, e_b;
    auto* e_norm = ends->add_subcommand("normalize", "normal form");
    e_norm->add_option("expr", e_a)->required();
    e_norm->callback([&] {
        action = [&] {
            const auto nf = normalize(parse_endspace(e_a).unmarked());
            out.emit(nf.to_string(), {{"normal_form", nf.to_string()}, {"canonical", nf.is_canonical()}});
        };
    });
    auto* e_inv = ends->add_subcommand("invariants", "space invariants");
    e_inv->add_option("expr", e_a)->required();
    e_inv->callback([&] {
        action = [&] {
            const auto j = to_json(invariants(parse_endspace(e_a).unmarked()));
            out.emit(j.dump(), j);
        };
    });
    auto* e_homeo = ends->add_subcommand("homeo", "homeomorphism test");
    e_homeo->add_option("a", e_a)->required();
    e_homeo->add_option("b", e_b)->required();
    e_homeo->callback([&] {
        action = [&] {
            const auto d = is_homeomorphic(parse_endspace(e_a).unmarked(), parse_endspace(e_b).unmarked());
            out.emit(to_string(d), {{"result", to_string(d)}});
        };
    });

    // surface
    auto* surf = app.add_subcommand("surface", "surface descriptors")->require_subcommand(1);
    std::string s_a, s_b, jsonl;
    auto* s_val = surf->add_subcommand("validate", "check a descriptor");
    s_val->add_option("descriptor", s_a)->required();
    s_val->callback([&] {
        action = [&] {
            const auto d = parse_surface(s_a);
            if (const auto err = validate(d)) {
                const json j{{"valid", false}, {"kind", to_string(err->kind)}, {"path", err->path}, {"message", err->message}};
                out.emit(std::string("invalid: ") + to_string(err->kind) + " at " + err->path + ": " + err->message, j);
                result = ValidationFailure;
                return;
            }
            out.emit("valid", {{"valid", true}});
        };
    });
    auto* s_inv = surf->add_subcommand("invariants", "surface invariants");
    s_inv->add_option("descriptor", s_a)->required();
    s_inv->callback([&] {
        action = [&] {
            const auto j = to_json(invariants(parse_surface(s_a)));
            out.emit(j.dump(), j);
        };
    });
    auto* s_homeo = surf->add_subcommand("homeo", "homeomorphism test");
    s_homeo->add_option("a", s_a)->required();
    s_homeo->add_option("b", s_b)->required();
    s_homeo->callback([&] {
        action = [&] {
            const auto d = surfaces_homeomorphic(parse_surface(s_a), parse_surface(s_b));
            out.emit(to_string(d), {{"result", to_string(d)}});
        };
    });
    const auto add_decide = [&](CLI::App* parent) {
        auto* cmd = parent->add_subcommand("decide", "answer the three stability questions");
        cmd->add_option("descriptor", s_a);
        cmd->add_option("--jsonl", jsonl, "batch file, one descriptor per line");
        cmd->callback([&] {
            action = [&] {
                if (!jsonl.empty()) {
                    result = decide_batch(jsonl);
                    return;
                }
                if (s_a.empty()) throw CLI::RequiredError("descriptor");
                const auto v = with_witnesses(decide(parse_surface(s_a)));
                out.emit(verdict_text(v), to_json(v));
            };
        });
    };
    add_decide(surf);
    add_decide(&app);

    // hom
    auto* hom = app.add_subcommand("hom", "group homology helpers")->require_subcommand(1);
    std::string h_text, h_preset, h_kind = "wreath";
    int h_n = 0, h_p = 1, h_degree = 20;
    auto* h_snf = hom->add_subcommand("snf", "Smith normal form of an integer matrix, rows separated by ';'");
    h_snf->add_option("matrix", h_text)->required();
    h_snf->callback([&] {
        action = [&] {
            const auto r = smith_normal_form(parse_matrix(h_text));
            std::string text;
            json diag = json::array();
            for (const auto& d : r.diagonal) {
                text += (text.empty() ? "" : " ") + big(d);
                diag.push_back(big(d));
            }
            out.emit(text, {{"diagonal", diag}, {"left", matrix_json(r.left)}, {"right", matrix_json(r.right)}});
        };
    });
    auto* h_ab = hom->add_subcommand("abelianize", "abelianization of a finite presentation");
    h_ab->add_option("presentation", h_text, "e.g. 'gens=2; rel=1 2 1 -2 -1 -2'");
    h_ab->add_option("--preset", h_preset, "braid | spherical_braid | symmetric | sl2z");
    h_ab->add_option("--n", h_n, "preset parameter");
    h_ab->callback([&] {
        action = [&] {
            if (h_text.empty() == h_preset.empty())
                throw std::invalid_argument("give exactly one of a presentation or --preset");
            const auto p = h_preset.empty() ? parse_presentation(h_text) : preset(h_preset, h_n);
            const auto g = abelianize(p);
            json tors = json::array();
            for (const auto& t : g.torsion) tors.push_back(big(t));
            out.emit(g.to_string(), {{"group", g.to_string()}, {"rank", g.rank}, {"torsion", tors},
                                     {"presentation", p.to_string()}});
        };
    });
    auto* h_poi = hom->add_subcommand("poincare", "Poincare series coefficients");
    h_poi->add_option("--kind", h_kind, "torus | wreath")->check(CLI::IsMember({"torus", "wreath"}));
    h_poi->add_option("--p", h_p, "number of factors")->check(CLI::PositiveNumber);
    h_poi->add_option("--degree", h_degree, "maximal degree")->check(CLI::NonNegativeNumber);
    h_poi->callback([&] {
        action = [&] {
            const auto kind = h_kind == "torus" ? SeriesKind::TorusPower : SeriesKind::WreathQuotient;
            const auto c = poincare_series(kind, h_p, h_degree);
            std::string text;
            json arr = json::array();
            for (const auto& x : c) {
                text += (text.empty() ? "" : " ") + big(x);
                arr.push_back(big(x));
            }
            out.emit(text, {{"coefficients", arr}});
        };
    });

    // snake
    auto* snake = app.add_subcommand("snake", "first N cells of the snake bijection N -> Z x N");
    std::size_t snake_n = 0;
    snake->add_option("count", snake_n)->required()->check(CLI::PositiveNumber);
    snake->callback([&] {
        action = [&] {
            const auto path = snake_bijection(snake_n);
            if (out.as_json) {
                json arr = json::array();
                for (const auto& c : path) arr.push_back({c.x, c.y});
                std::cout << arr.dump() << '\n';
            } else {
                for (const auto& c : path) std::cout << c.x << ' ' << c.y << '\n';
            }
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ParseFailure;
    }

    const auto fail = guarded([&] {
        try {
            action();
        } catch (const CLI::RequiredError& e) {
            throw ParseError(0, {"descriptor"}, e.what());
        }
    });
    if (fail) {
        if (out.as_json)
            std::cout << failure_json(*fail).dump(2) << '\n';
        else
            std::cerr << "error: " << fail->message << '\n';
        return fail->code;
    }
    return result;
}
