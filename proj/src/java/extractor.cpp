#include "scg/extractor.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "scg/error.hpp"
#include "scg/java/ast.hpp"

namespace fs = std::filesystem;

namespace scg {

namespace {

using namespace java;

const std::unordered_set<std::string_view> kJavaLang = {
    "Object", "String", "StringBuilder", "StringBuffer", "Integer", "Long", "Short", "Byte", "Character",
    "Boolean", "Double", "Float", "Number", "Math", "StrictMath", "System", "Thread", "ThreadLocal", "Runnable",
    "Iterable", "Comparable", "CharSequence", "Class", "ClassLoader", "Enum", "Record", "Void", "Process",
    "Runtime", "Package", "Appendable", "Readable", "AutoCloseable", "Cloneable", "Override", "Deprecated",
    "SuppressWarnings", "FunctionalInterface", "SafeVarargs", "Throwable", "Exception", "RuntimeException",
    "Error", "IllegalArgumentException", "IllegalStateException", "NullPointerException",
    "UnsupportedOperationException", "IndexOutOfBoundsException", "ArrayIndexOutOfBoundsException",
    "StringIndexOutOfBoundsException", "ClassCastException", "ArithmeticException", "InterruptedException",
    "CloneNotSupportedException", "NumberFormatException", "SecurityException", "NegativeArraySizeException",
    "ArrayStoreException", "ReflectiveOperationException", "ClassNotFoundException", "InstantiationException",
    "IllegalAccessException", "NoSuchFieldException", "NoSuchMethodException", "AssertionError",
    "OutOfMemoryError", "StackOverflowError", "LinkageError", "VirtualMachineError", "InternalError",
    "ExceptionInInitializerError",
};

bool startsLower(std::string_view s) { return !s.empty() && s[0] >= 'a' && s[0] <= 'z'; }

std::string join(const std::vector<std::string>& parts, std::size_t n) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out += '.';
        out += parts[i];
    }
    return out;
}

Location toLocation(const Span& s) { return {s.begin.line, s.begin.col, s.end.line, s.end.col}; }

struct TypeSym;

struct FileCtx {
    std::string uri;
    std::string pkg;
    const CompilationUnit* unit = nullptr;
    std::map<std::string, TypeSym*> topLevel;
};

struct MethodSym {
    std::string id;
    const MethodDecl* decl = nullptr;
    TypeSym* owner = nullptr;
    std::size_t arity = 0;
    bool varargs = false;
    std::map<std::string, std::string> typeParams;
};

struct FieldSym {
    std::string id;
    const TypeRef* type = nullptr;  // null for enum constants
    TypeSym* owner = nullptr;
};

struct TypeSym {
    std::string id;
    std::string name;
    const TypeDecl* decl = nullptr;
    FileCtx* file = nullptr;
    TypeSym* outer = nullptr;
    std::map<std::string, TypeSym*> nested;
    std::map<std::string, FieldSym> fields;
    std::map<std::string, std::vector<MethodSym*>> methods;
    std::vector<MethodSym*> ctors;
    std::map<std::string, std::string> typeParams;
    std::vector<TypeSym*> supers;  // in-project direct supertypes
};

/// Static type of an expression, as far as the extractor tracks it.
struct TypeInfo {
    TypeSym* sym = nullptr;
    std::string external;   // id of a type outside the project
    std::string package;    // expression is a package-name prefix
    int dims = 0;
    bool isType = false;    // expression names a type (static context)
    bool isSuper = false;   // `super`: look up members in supertypes only
    bool known() const { return sym || !external.empty(); }
};

/// Where a type reference is resolved.
struct Ctx {
    FileCtx* file = nullptr;
    TypeSym* type = nullptr;
    const std::map<std::string, std::string>* methodTypeParams = nullptr;
    std::vector<TypeSym*> extraTypes;  // supertypes of enclosing anonymous/local classes
};

struct TypeTarget {
    TypeSym* sym = nullptr;
    std::string external;
    std::string typeParam;
    bool found() const { return sym || !external.empty() || !typeParam.empty(); }
    std::string id() const { return sym ? sym->id : (!typeParam.empty() ? typeParam : external); }
};

struct VarInfo {
    std::string id;
    const TypeRef* type = nullptr;
};

class Extractor {
public:
    explicit Extractor(SemanticCodeGraph& graph) : g_(graph) {}

    int unresolved = 0;

    void run(std::vector<std::pair<SourceFile, CompilationUnit>>& units) {
        for (auto& [src, unit] : units) declareFile(src, unit);
        std::vector<TypeSym*> ordered;
        for (auto& t : types_) ordered.push_back(&t);
        for (auto* t : ordered) resolveSupers(*t);
        for (auto* t : ordered) declaredTypeEdges(*t);
        for (auto* t : ordered) walkBodies(*t);
        for (auto* t : ordered) overrideEdges(*t);
    }

    // ---- phase 1: declarations ------------------------------------------------
private:
    std::string uniqueId(std::string id) {
        if (!g_.contains(id)) return id;
        for (int k = 1;; ++k) {
            auto candidate = id + "+" + std::to_string(k);
            if (!g_.contains(candidate)) return candidate;
        }
    }

    SemanticNode& addNode(const std::string& id, NodeKind kind, std::string display, const FileCtx& file,
                          const Span& span) {
        SemanticNode n;
        n.id = id;
        n.kind = kind;
        n.displayName = std::move(display);
        n.packageName = file.pkg;
        n.fileUri = file.uri;
        n.location = toLocation(span);
        n.loc = n.location->lineSpan();
        g_.addNode(std::move(n));
        return const_cast<SemanticNode&>(*g_.find(id));
    }

    void edge(const std::string& from, const std::string& to, EdgeKind kind, std::optional<Span> at = std::nullopt) {
        SemanticEdge e;
        e.from = from;
        e.to = to;
        e.type = std::string(to_string(kind));
        if (at) e.location = toLocation(*at);
        g_.addEdge(std::move(e));
    }

    void declareFile(const SourceFile& src, const CompilationUnit& unit) {
        auto& file = files_.emplace_back();
        file.uri = src.uri;
        file.pkg = unit.packageName;
        file.unit = &unit;

        // FILE node spans the whole text
        std::vector<std::size_t> lineLengths{0};
        for (char c : src.text) {
            if (c == '\n')
                lineLengths.push_back(0);
            else
                ++lineLengths.back();
        }
        if (lineLengths.size() > 1 && lineLengths.back() == 0) lineLengths.pop_back();
        SemanticNode n;
        n.id = src.uri;
        n.kind = NodeKind::File;
        n.displayName = fs::path(src.uri).filename().string();
        n.packageName = unit.packageName;
        n.fileUri = src.uri;
        n.location = Location{0, 0, static_cast<int>(lineLengths.size()) - 1, static_cast<int>(lineLengths.back())};
        n.loc = static_cast<int>(lineLengths.size());
        g_.addNode(std::move(n));

        for (const auto& t : unit.types) declareType(*t, file, nullptr, src.uri);
    }

    void declareType(const TypeDecl& decl, FileCtx& file, TypeSym* outer, const std::string& parent) {
        auto& sym = types_.emplace_back();
        sym.name = decl.name;
        sym.decl = &decl;
        sym.file = &file;
        sym.outer = outer;
        auto base = outer ? outer->id + "." + decl.name : (file.pkg.empty() ? decl.name : file.pkg + "." + decl.name);
        sym.id = uniqueId(base);
        NodeKind kind = decl.kind == TypeKind::Enum   ? NodeKind::Enum
                        : decl.kind == TypeKind::Class ? NodeKind::Class
                                                       : NodeKind::Interface;
        addNode(sym.id, kind, decl.name, file, decl.span);
        edge(parent, sym.id, EdgeKind::Declaration);
        typesByFqn_.emplace(sym.id, &sym);
        if (outer) {
            outer->nested.emplace(decl.name, &sym);
        } else {
            file.topLevel.emplace(decl.name, &sym);
            packageTypes_[file.pkg].emplace(decl.name, &sym);
        }

        for (const auto& tp : decl.typeParams) {
            auto id = uniqueId(sym.id + "." + tp.name);
            addNode(id, NodeKind::TypeParameter, tp.name, file, tp.span);
            edge(sym.id, id, EdgeKind::Declaration);
            sym.typeParams.emplace(tp.name, id);
        }
        for (const auto& c : decl.constants) {
            auto id = uniqueId(sym.id + "." + c.name + ".");
            addNode(id, NodeKind::Field, c.name, file, c.span);
            edge(sym.id, id, EdgeKind::Declaration);
            sym.fields.emplace(c.name, FieldSym{id, nullptr, &sym});
        }
        for (const auto& f : decl.fields) {
            for (const auto& v : f.vars) {
                auto id = uniqueId(sym.id + "." + v.name + ".");
                addNode(id, NodeKind::Field, v.name, file, v.span);
                edge(sym.id, id, EdgeKind::Declaration);
                sym.fields.emplace(v.name, FieldSym{id, &*v.type, &sym});
            }
        }
        std::map<std::string, int> overloads;
        for (const auto& m : decl.methods) {
            auto& msym = methods_.emplace_back();
            int k = overloads[m.isConstructor ? std::string("<init>") : m.name]++;
            auto suffix = k == 0 ? std::string("().") : "(+" + std::to_string(k) + ").";
            msym.id = uniqueId(sym.id + "." + m.name + suffix);
            msym.decl = &m;
            msym.owner = &sym;
            msym.arity = m.params.size();
            msym.varargs = !m.params.empty() && m.params.back().varargs;
            addNode(msym.id, m.isConstructor ? NodeKind::Constructor : NodeKind::Method, m.name, file, m.span);
            edge(sym.id, msym.id, EdgeKind::Declaration);
            for (const auto& tp : m.typeParams) {
                auto id = uniqueId(msym.id + tp.name);
                addNode(id, NodeKind::TypeParameter, tp.name, file, tp.span);
                edge(msym.id, id, EdgeKind::Declaration);
                msym.typeParams.emplace(tp.name, id);
            }
            for (const auto& p : m.params) {
                if (p.name == "this") continue;
                auto id = uniqueId(msym.id + p.name);
                addNode(id, NodeKind::Parameter, p.name, file, p.span);
                edge(msym.id, id, EdgeKind::Declaration);
            }
            if (m.isConstructor)
                sym.ctors.push_back(&msym);
            else
                sym.methods[m.name].push_back(&msym);
        }
        for (const auto& nested : decl.types) declareType(*nested, file, &sym, sym.id);
    }

    // ---- type resolution -----------------------------------------------------------
    TypeSym* memberType(TypeSym* t, const std::string& name, bool inherited) {
        std::set<TypeSym*> seen;
        std::deque<TypeSym*> queue{t};
        while (!queue.empty()) {
            auto* cur = queue.front();
            queue.pop_front();
            if (!seen.insert(cur).second) continue;
            if (auto it = cur->nested.find(name); it != cur->nested.end()) return it->second;
            if (!inherited) break;
            for (auto* s : cur->supers) queue.push_back(s);
        }
        return nullptr;
    }

    TypeTarget resolveSimple(const std::string& name, const Ctx& ctx, bool inherited) {
        TypeTarget out;
        if (ctx.methodTypeParams) {
            if (auto it = ctx.methodTypeParams->find(name); it != ctx.methodTypeParams->end()) {
                out.typeParam = it->second;
                return out;
            }
        }
        for (auto* t : ctx.extraTypes) {
            if (auto* m = memberType(t, name, inherited)) {
                out.sym = m;
                return out;
            }
        }
        for (auto* t = ctx.type; t; t = t->outer) {
            if (auto it = t->typeParams.find(name); it != t->typeParams.end()) {
                out.typeParam = it->second;
                return out;
            }
            if (t->name == name) {
                out.sym = t;
                return out;
            }
            if (auto* m = memberType(t, name, inherited)) {
                out.sym = m;
                return out;
            }
        }
        const auto& file = *ctx.file;
        if (auto it = file.topLevel.find(name); it != file.topLevel.end()) {
            out.sym = it->second;
            return out;
        }
        for (const auto& imp : file.unit->imports) {
            if (imp.isStatic || imp.wildcard) continue;
            auto dot = imp.name.rfind('.');
            if (imp.name.substr(dot == std::string::npos ? 0 : dot + 1) != name) continue;
            if (auto it = typesByFqn_.find(imp.name); it != typesByFqn_.end())
                out.sym = it->second;
            else
                out.external = imp.name;
            return out;
        }
        if (auto pkg = packageTypes_.find(file.pkg); pkg != packageTypes_.end()) {
            if (auto it = pkg->second.find(name); it != pkg->second.end()) {
                out.sym = it->second;
                return out;
            }
        }
        for (const auto& imp : file.unit->imports) {
            if (imp.isStatic || !imp.wildcard) continue;
            if (auto it = typesByFqn_.find(imp.name + "." + name); it != typesByFqn_.end()) {
                out.sym = it->second;
                return out;
            }
        }
        if (kJavaLang.contains(name)) out.external = "java.lang." + name;
        return out;
    }

    TypeTarget resolveParts(const std::vector<std::string>& parts, const Ctx& ctx, bool inherited) {
        auto head = resolveSimple(parts[0], ctx, inherited);
        if (parts.size() == 1) return head;
        auto walkNested = [&](TypeTarget t, std::size_t from) {
            for (std::size_t i = from; i < parts.size(); ++i) {
                if (t.sym) {
                    auto* m = memberType(t.sym, parts[i], inherited);
                    if (!m) return TypeTarget{};
                    t.sym = m;
                } else if (!t.external.empty()) {
                    t.external += "." + parts[i];
                } else {
                    return TypeTarget{};
                }
            }
            return t;
        };
        if (head.sym || !head.external.empty()) return walkNested(head, 1);
        for (std::size_t n = parts.size(); n >= 1; --n) {
            if (auto it = typesByFqn_.find(join(parts, n)); it != typesByFqn_.end()) {
                TypeTarget t;
                t.sym = it->second;
                return walkNested(t, n);
            }
        }
        TypeTarget out;
        if (startsLower(parts[0])) out.external = join(parts, parts.size());
        return out;
    }

    TypeInfo resolveTypeRef(const TypeRef& ref, const Ctx& ctx, bool countMiss = false) {
        TypeInfo info;
        info.dims = ref.dims;
        if (ref.primitive || ref.isVar()) return info;
        auto t = resolveParts(ref.parts, ctx, true);
        if (!t.found()) {
            if (countMiss) ++unresolved;
            return info;
        }
        info.sym = t.sym;
        info.external = t.external;
        return info;
    }

    /// Emits a TYPE edge from `from` to the declared type, when it names a type.
    void typeEdge(const std::string& from, const TypeRef& ref, const Ctx& ctx) {
        if (ref.primitive || ref.isVar()) return;
        auto t = resolveParts(ref.parts, ctx, true);
        if (!t.found()) {
            ++unresolved;
            return;
        }
        edge(from, t.id(), EdgeKind::Type, ref.nameSpan);
    }

    Ctx typeCtx(TypeSym& t, const std::map<std::string, std::string>* methodTps = nullptr) {
        Ctx c;
        c.file = t.file;
        c.type = &t;
        c.methodTypeParams = methodTps;
        return c;
    }

    // ---- phase 2 ---------------------------------------------------------------------
    void resolveSupers(TypeSym& t) {
        auto ctx = typeCtx(t);
        auto add = [&](const TypeRef& ref) {
            auto target = resolveParts(ref.parts, ctx, false);
            if (!target.found()) {
                ++unresolved;
                return;
            }
            if (target.sym == &t) return;
            edge(t.id, target.id(), EdgeKind::Extend, ref.nameSpan);
            if (target.sym) t.supers.push_back(target.sym);
        };
        for (const auto& ref : t.decl->extends) add(ref);
        for (const auto& ref : t.decl->implements) add(ref);
    }

    void declaredTypeEdges(TypeSym& t) {
        auto ctx = typeCtx(t);
        for (const auto& [name, f] : t.fields) {
            if (f.type)
                typeEdge(f.id, *f.type, ctx);
            else
                edge(f.id, t.id, EdgeKind::Type, std::nullopt);
        }
        for (auto* m : allMethods(t)) {
            auto mctx = typeCtx(t, &m->typeParams);
            if (m->decl->returnType) typeEdge(m->id, *m->decl->returnType, mctx);
            for (const auto& p : m->decl->params) {
                if (p.name == "this") continue;
                typeEdge(m->id + p.name, p.type, mctx);
            }
        }
    }

    std::vector<MethodSym*> allMethods(TypeSym& t) {
        std::vector<MethodSym*> out(t.ctors.begin(), t.ctors.end());
        for (auto& [name, list] : t.methods) out.insert(out.end(), list.begin(), list.end());
        return out;
    }

    void overrideEdges(TypeSym& t) {
        for (auto& [name, list] : t.methods) {
            for (auto* m : list) {
                if (m->decl->isStatic) continue;
                for (auto* s : t.supers) {
                    if (auto* target = findMethod(s, name, m->arity, true)) edge(m->id, target->id, EdgeKind::Override);
                }
            }
        }
    }

public:
    // ---- member lookup ------------------------------------------------------------------
    MethodSym* findMethod(TypeSym* t, const std::string& name, std::size_t arity, bool exactOnly = false) {
        std::set<TypeSym*> seen;
        std::deque<TypeSym*> queue{t};
        while (!queue.empty()) {
            auto* cur = queue.front();
            queue.pop_front();
            if (!seen.insert(cur).second) continue;
            if (auto it = cur->methods.find(name); it != cur->methods.end()) {
                for (auto* m : it->second)
                    if (m->arity == arity) return m;
                if (!exactOnly)
                    for (auto* m : it->second)
                        if (m->varargs && arity + 1 >= m->arity) return m;
            }
            for (auto* s : cur->supers) queue.push_back(s);
        }
        return nullptr;
    }

    MethodSym* findMethodAnyArity(TypeSym* t, const std::string& name) {
        std::set<TypeSym*> seen;
        std::deque<TypeSym*> queue{t};
        while (!queue.empty()) {
            auto* cur = queue.front();
            queue.pop_front();
            if (!seen.insert(cur).second) continue;
            if (auto it = cur->methods.find(name); it != cur->methods.end() && !it->second.empty())
                return it->second.front();
            for (auto* s : cur->supers) queue.push_back(s);
        }
        return nullptr;
    }

    MethodSym* findCtor(TypeSym* t, std::size_t arity) {
        for (auto* m : t->ctors)
            if (m->arity == arity) return m;
        for (auto* m : t->ctors)
            if (m->varargs && arity + 1 >= m->arity) return m;
        return nullptr;
    }

    const FieldSym* findField(TypeSym* t, const std::string& name) {
        std::set<TypeSym*> seen;
        std::deque<TypeSym*> queue{t};
        while (!queue.empty()) {
            auto* cur = queue.front();
            queue.pop_front();
            if (!seen.insert(cur).second) continue;
            if (auto it = cur->fields.find(name); it != cur->fields.end()) return &it->second;
            for (auto* s : cur->supers) queue.push_back(s);
        }
        return nullptr;
    }

    TypeSym* typeByFqn(const std::string& fqn) {
        auto it = typesByFqn_.find(fqn);
        return it == typesByFqn_.end() ? nullptr : it->second;
    }

private:
    class Walker;
    void walkBodies(TypeSym& t);

    SemanticCodeGraph& g_;
    std::deque<FileCtx> files_;
    std::deque<TypeSym> types_;
    std::deque<MethodSym> methods_;
    std::map<std::string, TypeSym*> typesByFqn_;
    std::map<std::string, std::map<std::string, TypeSym*>> packageTypes_;

    friend class Walker;
};

/// Walks one member body (method, initializer, field initializer), emitting
/// local variable nodes and CALL/REFERENCE/TYPE edges attributed to `owner_`.
class Extractor::Walker {
public:
    Walker(Extractor& ex, Ctx ctx, std::string owner) : ex_(ex), ctx_(std::move(ctx)), owner_(std::move(owner)) {
        scopes_.emplace_back();
    }

    void declareParam(const std::string& name, const std::string& id, const TypeRef* type) {
        scopes_.back()[name] = VarInfo{id, type};
    }

    void stmt(const Stmt* s) {
        if (!s) return;
        switch (s->kind) {
            case StmtKind::Block: {
                push();
                for (const auto& c : s->children) stmt(c.get());
                pop();
                break;
            }
            case StmtKind::LocalVars:
                for (const auto& v : s->vars) local(v);
                break;
            case StmtKind::LocalClass:
                localClass(*s->localClass);
                break;
            case StmtKind::For: {
                push();
                // children[0] is the body, the rest are init statements
                for (std::size_t i = 1; i < s->children.size(); ++i) stmt(s->children[i].get());
                for (const auto& e : s->exprs) value(e.get());
                stmt(s->children[0].get());
                pop();
                break;
            }
            case StmtKind::ForEach: {
                push();
                value(s->exprs[0].get());
                local(s->vars[0]);
                stmt(s->children[0].get());
                pop();
                break;
            }
            case StmtKind::Try: {
                push();
                for (const auto& v : s->vars) {
                    if (v.type)
                        local(v);
                    else
                        value(v.init.get());
                }
                stmt(s->children[0].get());
                pop();
                for (const auto& c : s->catches) {
                    push();
                    local(c.param);
                    for (std::size_t i = 1; i < c.types.size(); ++i) ex_.typeEdge(lastLocal_, c.types[i], ctx_);
                    stmt(c.body.get());
                    pop();
                }
                stmt(s->finallyBlock.get());
                break;
            }
            case StmtKind::Switch: {
                auto selector = value(s->exprs[0].get());
                auto* saved = lastSwitchType_;
                lastSwitchType_ = selector.dims == 0 ? selector.sym : nullptr;
                push();
                for (const auto& c : s->cases) {
                    // case labels are enum constants or constants; resolve names only
                    for (const auto& l : c.labels) caseLabel(l.get());
                    for (const auto& b : c.body) stmt(b.get());
                }
                pop();
                lastSwitchType_ = saved;
                break;
            }
            default:
                for (const auto& e : s->exprs) value(e.get());
                for (const auto& c : s->children) stmt(c.get());
                break;
        }
    }

    TypeInfo value(const Expr* e) { return expr(e, false); }

    void lambdaParamsAndBody(const Expr& e) {
        push();
        for (const auto& p : e.lambdaParams) local(p);
        if (e.lambdaBlock) stmt(e.lambdaBlock.get());
        for (const auto& a : e.args) value(a.get());
        pop();
    }

private:
    void push() { scopes_.emplace_back(); }
    void pop() { scopes_.pop_back(); }

    std::string localId(const std::string& name, int line) {
        auto base = owner_;
        if (!base.ends_with('.')) base += '.';
        return ex_.uniqueId(base + name + "?" + std::to_string(line + 1));
    }

    void local(const VarDecl& v) {
        auto id = localId(v.name, v.namePos.line);
        ex_.addNode(id, NodeKind::LocalVariable, v.name, *ctx_.file, v.span);
        ex_.edge(owner_, id, EdgeKind::Declaration);
        if (v.type) ex_.typeEdge(id, *v.type, ctx_);
        scopes_.back()[v.name] = VarInfo{id, v.type ? &*v.type : nullptr};
        lastLocal_ = id;
        if (v.init) value(v.init.get());
    }

    const VarInfo* findVar(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
            if (auto f = it->find(name); f != it->end()) return &f->second;
        return nullptr;
    }

    std::vector<TypeSym*> enclosingTypes() const {
        std::vector<TypeSym*> chain(ctx_.extraTypes.rbegin(), ctx_.extraTypes.rend());
        for (auto* t = ctx_.type; t; t = t->outer) chain.push_back(t);
        return chain;
    }

    TypeInfo typeOfField(const FieldSym& f) {
        TypeInfo info;
        if (!f.type) {
            info.sym = f.owner;
            return info;
        }
        return ex_.resolveTypeRef(*f.type, ex_.typeCtx(*f.owner));
    }

    TypeInfo typeOfMethod(const MethodSym& m) {
        if (!m.decl->returnType) return {};
        return ex_.resolveTypeRef(*m.decl->returnType, ex_.typeCtx(*m.owner, &m.typeParams));
    }

    TypeInfo fromTarget(const TypeTarget& t) {
        TypeInfo info;
        info.sym = t.sym;
        info.external = t.external;
        info.isType = t.sym || !t.external.empty();
        return info;
    }

    void reference(const std::string& to, const Span& at) { ex_.edge(owner_, to, EdgeKind::Reference, at); }
    void call(const MethodSym& m, const Span& at) { ex_.edge(owner_, m.id, EdgeKind::Call, at); }

    TypeInfo name(const Expr& e, bool qualifier) {
        if (const auto* v = findVar(e.name)) {
            reference(v->id, e.nameSpan);
            if (!v->type) return {};
            return ex_.resolveTypeRef(*v->type, ctx_);
        }
        for (auto* t : enclosingTypes()) {
            if (const auto* f = ex_.findField(t, e.name)) {
                reference(f->id, e.nameSpan);
                return typeOfField(*f);
            }
        }
        if (auto* f = staticImportField(e.name)) {
            reference(f->id, e.nameSpan);
            return typeOfField(*f);
        }
        auto t = ex_.resolveSimple(e.name, ctx_, true);
        if (t.sym || !t.external.empty()) return fromTarget(t);
        if (qualifier) {
            TypeInfo pkg;
            pkg.package = e.name;
            return pkg;
        }
        ++ex_.unresolved;
        return {};
    }

    const FieldSym* staticImportField(const std::string& name) {
        for (const auto& imp : ctx_.file->unit->imports) {
            if (!imp.isStatic) continue;
            std::string typeName = imp.name;
            if (!imp.wildcard) {
                auto dot = imp.name.rfind('.');
                if (dot == std::string::npos || imp.name.substr(dot + 1) != name) continue;
                typeName = imp.name.substr(0, dot);
            }
            if (auto* t = ex_.typeByFqn(typeName))
                if (const auto* f = ex_.findField(t, name)) return f;
        }
        return nullptr;
    }

    MethodSym* staticImportMethod(const std::string& name, std::size_t arity) {
        for (const auto& imp : ctx_.file->unit->imports) {
            if (!imp.isStatic) continue;
            std::string typeName = imp.name;
            if (!imp.wildcard) {
                auto dot = imp.name.rfind('.');
                if (dot == std::string::npos || imp.name.substr(dot + 1) != name) continue;
                typeName = imp.name.substr(0, dot);
            }
            if (auto* t = ex_.typeByFqn(typeName))
                if (auto* m = ex_.findMethod(t, name, arity)) return m;
        }
        return nullptr;
    }

    TypeInfo fieldAccess(const Expr& e, bool qualifier) {
        auto target = expr(e.target.get(), true);
        if (!target.package.empty()) {
            auto fqn = target.package + "." + e.name;
            if (auto* t = ex_.typeByFqn(fqn)) {
                TypeInfo info;
                info.sym = t;
                info.isType = true;
                return info;
            }
            if (!startsLower(e.name)) {
                TypeInfo info;
                info.external = fqn;
                info.isType = true;
                return info;
            }
            if (qualifier) {
                TypeInfo pkg;
                pkg.package = fqn;
                return pkg;
            }
            ++ex_.unresolved;
            return {};
        }
        if (target.dims > 0) {
            if (e.name != "length") ++ex_.unresolved;
            return {};
        }
        if (target.sym) {
            if (const auto* f = ex_.findField(target.sym, e.name)) {
                reference(f->id, e.nameSpan);
                return typeOfField(*f);
            }
            if (target.isType) {
                if (auto* m = ex_.memberType(target.sym, e.name, true)) {
                    TypeInfo info;
                    info.sym = m;
                    info.isType = true;
                    return info;
                }
            }
            ++ex_.unresolved;
            return {};
        }
        if (!target.external.empty() && target.isType && !startsLower(e.name)) {
            TypeInfo info;
            info.external = target.external + "." + e.name;
            info.isType = true;
            return info;
        }
        ++ex_.unresolved;
        return {};
    }

    std::vector<TypeSym*> superTypes() const {
        if (!ctx_.type) return {};
        return ctx_.type->supers;
    }

    TypeInfo callExpr(const Expr& e) {
        for (const auto& a : e.args) value(a.get());
        const auto arity = e.args.size();
        if (!e.target) {
            if (e.name == "this" || e.name == "super") {
                std::vector<TypeSym*> candidates;
                if (e.name == "this" && ctx_.type) candidates.push_back(ctx_.type);
                if (e.name == "super") candidates = superTypes();
                for (auto* t : candidates) {
                    if (auto* m = ex_.findCtor(t, arity)) {
                        call(*m, e.nameSpan);
                        return {};
                    }
                }
                // implicit default constructors of in-project supertypes are not nodes
                if (candidates.empty() || !std::any_of(candidates.begin(), candidates.end(),
                                                       [](TypeSym* t) { return t->ctors.empty(); }))
                    ++ex_.unresolved;
                return {};
            }
            for (auto* t : enclosingTypes()) {
                if (auto* m = ex_.findMethod(t, e.name, arity)) {
                    call(*m, e.nameSpan);
                    return typeOfMethod(*m);
                }
            }
            if (auto* m = staticImportMethod(e.name, arity)) {
                call(*m, e.nameSpan);
                return typeOfMethod(*m);
            }
            ++ex_.unresolved;
            return {};
        }
        auto target = expr(e.target.get(), true);
        std::vector<TypeSym*> candidates;
        if (target.isSuper)
            candidates = target.sym ? std::vector<TypeSym*>{target.sym} : superTypes();
        else if (target.sym)
            candidates.push_back(target.sym);
        for (auto* t : candidates) {
            if (auto* m = ex_.findMethod(t, e.name, arity)) {
                call(*m, e.nameSpan);
                return typeOfMethod(*m);
            }
        }
        ++ex_.unresolved;
        return {};
    }

    TypeInfo newExpr(const Expr& e) {
        if (e.target) value(e.target.get());
        for (const auto& a : e.args) value(a.get());
        auto created = ex_.resolveTypeRef(*e.type, ctx_);
        if (created.sym) {
            if (auto* m = ex_.findCtor(created.sym, e.args.size()))
                call(*m, e.nameSpan);
            else if (!created.sym->ctors.empty())
                ++ex_.unresolved;
        } else {
            ++ex_.unresolved;
        }
        if (e.body) {
            Ctx inner = ctx_;
            if (created.sym) inner.extraTypes.push_back(created.sym);
            classBody(*e.body, std::move(inner));
        }
        created.dims = 0;
        created.isType = false;
        return created;
    }

public:
    /// Anonymous and local class bodies: their members are not graph nodes;
    /// code inside them is attributed to the enclosing member.
    void classBody(const TypeDecl& body, Ctx inner) {
        std::swap(ctx_, inner);
        push();
        for (const auto& f : body.fields)
            for (const auto& v : f.vars)
                if (v.init) value(v.init.get());
        for (const auto& init : body.initializers) stmt(init.body.get());
        for (const auto& c : body.constants)
            for (const auto& a : c.args) value(a.get());
        for (const auto& m : body.methods) {
            push();
            for (const auto& p : m.params) {
                if (p.name == "this") continue;
                VarDecl v;
                v.type = p.type;
                v.name = p.name;
                v.namePos = p.namePos;
                v.span = p.span;
                local(v);
                scopes_.back()[p.name].type = &p.type;  // v is a temporary
            }
            stmt(m.body.get());
            pop();
        }
        for (const auto& nested : body.types) localClass(*nested);
        pop();
        std::swap(ctx_, inner);
    }

private:
    void localClass(const TypeDecl& decl) {
        Ctx inner = ctx_;
        for (const auto* list : {&decl.extends, &decl.implements}) {
            for (const auto& ref : *list) {
                auto t = ex_.resolveTypeRef(ref, ctx_);
                if (t.sym) inner.extraTypes.push_back(t.sym);
            }
        }
        classBody(decl, std::move(inner));
    }

    TypeInfo methodRef(const Expr& e) {
        TypeInfo target;
        if (e.type)
            target = ex_.resolveTypeRef(*e.type, ctx_);
        else
            target = expr(e.target.get(), true);
        if (target.sym && target.dims == 0) {
            MethodSym* m = e.name == "new" ? (target.sym->ctors.empty() ? nullptr : target.sym->ctors.front())
                                           : ex_.findMethodAnyArity(target.sym, e.name);
            if (m) {
                call(*m, e.nameSpan);
                return {};
            }
            if (e.name == "new") return {};
        }
        if (target.dims > 0 && e.name == "new") return {};
        ++ex_.unresolved;
        return {};
    }

    // Enum switch labels are bare constant names resolved against the selector's type.
    void caseLabel(const Expr* label) {
        if (label->kind == ExprKind::Name) {
            if (findVar(label->name)) {
                value(label);
                return;
            }
            for (auto* t : enclosingTypes()) {
                if (const auto* f = ex_.findField(t, label->name)) {
                    reference(f->id, label->nameSpan);
                    return;
                }
            }
            if (auto* f = enumConstant(label->name)) {
                reference(f->id, label->nameSpan);
                return;
            }
            ++ex_.unresolved;
            return;
        }
        value(label);
    }

    const FieldSym* enumConstant(const std::string& name) {
        if (lastSwitchType_ && lastSwitchType_->decl->kind == TypeKind::Enum) {
            if (auto it = lastSwitchType_->fields.find(name); it != lastSwitchType_->fields.end()) return &it->second;
        }
        return nullptr;
    }

    TypeInfo expr(const Expr* e, bool qualifier) {
        if (!e) return {};
        switch (e->kind) {
            case ExprKind::Name:
                return name(*e, qualifier);
            case ExprKind::FieldAccess:
                return fieldAccess(*e, qualifier);
            case ExprKind::Call:
                return callExpr(*e);
            case ExprKind::New:
                return newExpr(*e);
            case ExprKind::NewArray: {
                for (const auto& a : e->args) value(a.get());
                auto t = ex_.resolveTypeRef(*e->type, ctx_);
                t.isType = false;
                return t;
            }
            case ExprKind::ArrayInit:
                for (const auto& a : e->args) value(a.get());
                return {};
            case ExprKind::Literal: {
                TypeInfo t;
                if (e->name == "string") t.external = "java.lang.String";
                return t;
            }
            case ExprKind::This: {
                TypeInfo t;
                if (e->type) {
                    auto target = ex_.resolveParts(e->type->parts, ctx_, true);
                    t.sym = target.sym;
                } else {
                    t.sym = ctx_.type;
                }
                return t;
            }
            case ExprKind::Super: {
                TypeInfo t;
                t.isSuper = true;
                if (e->type) {
                    // `Iface.super.m()` names the interface directly
                    auto target = ex_.resolveParts(e->type->parts, ctx_, true);
                    if (target.sym && target.sym != ctx_.type) t.sym = target.sym;
                }
                return t;
            }
            case ExprKind::Cast: {
                value(e->target.get());
                auto t = ex_.resolveTypeRef(*e->type, ctx_);
                t.isType = false;
                return t;
            }
            case ExprKind::InstanceOf:
                value(e->target.get());
                return {};
            case ExprKind::Index: {
                auto t = value(e->target.get());
                value(e->args[0].get());
                if (t.dims > 0) --t.dims;
                return t;
            }
            case ExprKind::Lambda:
                lambdaParamsAndBody(*e);
                return {};
            case ExprKind::MethodRef:
                return methodRef(*e);
            case ExprKind::ClassLit:
                return {};
            case ExprKind::Assign: {
                auto t = value(e->args[0].get());
                value(e->args[1].get());
                return t;
            }
            case ExprKind::Conditional: {
                value(e->args[0].get());
                auto t = value(e->args[1].get());
                value(e->args[2].get());
                return t;
            }
            case ExprKind::Unary:
                return value(e->target.get());
            case ExprKind::Binary: {
                auto lhs = value(e->args[0].get());
                value(e->args[1].get());
                if (e->name == "+" && lhs.external == "java.lang.String") return lhs;
                return {};
            }
        }
        return {};
    }

    Extractor& ex_;
    Ctx ctx_;
    std::string owner_;
    std::vector<std::map<std::string, VarInfo>> scopes_;
    std::string lastLocal_;
    TypeSym* lastSwitchType_ = nullptr;
};

void Extractor::walkBodies(TypeSym& t) {
    auto ctx = typeCtx(t);
    for (const auto& c : t.decl->constants) {
        const auto& f = t.fields.at(c.name);
        Walker w(*this, ctx, f.id);
        for (const auto& a : c.args) w.value(a.get());
        if (auto* m = findCtor(&t, c.args.size())) edge(f.id, m->id, EdgeKind::Call, c.span);
        if (c.body) {
            // constant bodies behave like anonymous subclasses of the enum
            Ctx inner = ctx;
            inner.extraTypes.push_back(&t);
            w.classBody(*c.body, std::move(inner));
        }
    }
    for (const auto& fd : t.decl->fields) {
        for (const auto& v : fd.vars) {
            if (!v.init) continue;
            Walker w(*this, ctx, t.fields.at(v.name).id);
            w.value(v.init.get());
        }
    }
    for (const auto& init : t.decl->initializers) {
        Walker w(*this, ctx, t.id);
        w.stmt(init.body.get());
    }
    for (auto* m : allMethods(t)) {
        if (!m->decl->body) continue;
        Walker w(*this, typeCtx(t, &m->typeParams), m->id);
        for (const auto& p : m->decl->params)
            if (p.name != "this") w.declareParam(p.name, m->id + p.name, &p.type);
        w.stmt(m->decl->body.get());
    }
}

std::string readText(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

ExtractionResult extractSources(std::vector<SourceFile> files, const std::string& projectName) {
    const auto start = std::chrono::steady_clock::now();
    ExtractionResult result;
    result.graph.setProjectName(projectName);
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.uri < b.uri; });

    std::vector<std::pair<SourceFile, CompilationUnit>> units;
    for (auto& f : files) {
        try {
            auto unit = parseCompilationUnit(f.text);
            units.emplace_back(std::move(f), std::move(unit));
            ++result.report.filesParsed;
        } catch (const ParseError& e) {
            ++result.report.filesFailed;
            result.report.failures.push_back(f.uri + ": " + e.what());
        }
    }
    if (files.empty()) result.report.warnings.push_back("no Java source files found");

    Extractor ex(result.graph);
    ex.run(units);
    result.report.unresolvedReferences = ex.unresolved;
    result.report.elapsedMs =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<std::string> collectJavaFiles(const fs::path& workspaceRoot) {
    std::error_code ec;
    if (!fs::is_directory(workspaceRoot, ec)) throw DataError("workspace does not exist: " + workspaceRoot.string());
    static const std::set<std::string> kSkipped = {"target", "build", ".git", std::string(".semanticgraphs")};
    std::vector<std::string> out;
    for (auto it = fs::recursive_directory_iterator(workspaceRoot, ec); !ec && it != fs::recursive_directory_iterator();
         it.increment(ec)) {
        if (it->is_directory() && kSkipped.contains(it->path().filename().string())) {
            it.disable_recursion_pending();
            continue;
        }
        if (it->is_regular_file() && it->path().extension() == ".java")
            out.push_back(fs::relative(it->path(), workspaceRoot).generic_string());
    }
    if (ec) throw DataError("cannot list " + workspaceRoot.string() + ": " + ec.message());
    std::sort(out.begin(), out.end());
    return out;
}

ExtractionResult extractProject(const fs::path& workspaceRoot) {
    std::vector<SourceFile> files;
    for (const auto& rel : collectJavaFiles(workspaceRoot)) files.push_back({rel, readText(workspaceRoot / rel)});
    std::error_code ec;
    auto canonical = fs::weakly_canonical(workspaceRoot, ec);
    auto name = (ec ? workspaceRoot : canonical).filename().string();
    return extractSources(std::move(files), name);
}

}  // namespace scg
