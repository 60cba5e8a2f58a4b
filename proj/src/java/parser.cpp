#include <algorithm>
#include <array>

#include "scg/java/ast.hpp"

namespace scg::java {

std::string TypeRef::name() const {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += '.';
        out += p;
    }
    return out;
}

namespace {

constexpr std::string_view kPrimitives[] = {"boolean", "byte", "char", "short", "int", "long", "float", "double", "void"};

constexpr std::string_view kModifiers[] = {"public",   "protected",    "private",   "static",   "abstract",
                                           "final",    "native",       "synchronized", "transient", "volatile",
                                           "strictfp", "default"};

constexpr std::string_view kAssignOps[] = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="};

bool isPrimitive(const Token& t) {
    return t.kind == TokenKind::Keyword &&
           std::find(std::begin(kPrimitives), std::end(kPrimitives), t.text) != std::end(kPrimitives);
}

bool adjacent(const Token& a, const Token& b) { return a.span.end == b.span.begin; }

struct Modifiers {
    bool any = false;
    bool isStatic = false;
    Pos start;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : t_(std::move(tokens)) {}

    CompilationUnit compilationUnit() {
        CompilationUnit unit;
        auto save = p_;
        skipAnnotations();
        if (at("package")) {
            next();
            unit.packageName = qualifiedName();
            expect(";");
        } else {
            p_ = save;
        }
        while (at("import")) {
            next();
            Import imp;
            imp.isStatic = accept("static");
            imp.name = expectIdent();
            while (accept(".")) {
                if (accept("*")) {
                    imp.wildcard = true;
                    break;
                }
                imp.name += '.' + expectIdent();
            }
            expect(";");
            unit.imports.push_back(std::move(imp));
        }
        while (!atEnd()) {
            if (accept(";")) continue;
            if (cur().isIdentifier() && (cur().text == "module" || cur().text == "open")) {
                // module-info.java: declares no code entities.
                while (!atEnd()) next();
                break;
            }
            auto mods = modifiers(true);
            unit.types.push_back(typeDecl(mods));
        }
        return unit;
    }

private:
    // ---- token helpers -------------------------------------------------
    const Token& cur() const { return t_[p_]; }
    const Token& la(std::size_t k) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
    bool at(std::string_view s) const { return cur().is(s); }
    bool atEnd() const { return cur().kind == TokenKind::End; }
    Pos here() const { return cur().span.begin; }

    const Token& next() {
        const Token& tok = t_[p_];
        if (tok.kind != TokenKind::End) ++p_;
        lastEnd_ = tok.span.end;
        return tok;
    }
    bool accept(std::string_view s) {
        if (!at(s)) return false;
        next();
        return true;
    }
    void expect(std::string_view s) {
        if (!accept(s)) fail("expected '" + std::string(s) + "' but found '" + cur().text + "'");
    }
    std::string expectIdent() {
        if (!cur().isIdentifier()) fail("expected identifier but found '" + cur().text + "'");
        return next().text;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(here(), what); }
    Span from(Pos begin) const { return {begin, lastEnd_}; }

    std::string qualifiedName() {
        auto name = expectIdent();
        while (at(".") && la(1).isIdentifier()) {
            next();
            name += '.' + next().text;
        }
        return name;
    }

    void skipBalanced() {
        // cur() is an opening bracket
        int depth = 0;
        do {
            const auto& tok = next();
            if (tok.is("(") || tok.is("{") || tok.is("[")) ++depth;
            if (tok.is(")") || tok.is("}") || tok.is("]")) --depth;
            if (tok.kind == TokenKind::End) fail("unbalanced brackets");
        } while (depth > 0);
    }

    bool atAnnotation() const { return at("@") && !la(1).is("interface"); }

    void skipAnnotations() {
        while (atAnnotation()) {
            next();
            qualifiedName();
            if (at("(")) skipBalanced();
        }
    }

    Modifiers modifiers(bool allowDefault) {
        Modifiers m;
        m.start = here();
        for (;;) {
            if (atAnnotation()) {
                skipAnnotations();
                m.any = true;
                continue;
            }
            const auto& tok = cur();
            if (tok.kind == TokenKind::Keyword &&
                std::find(std::begin(kModifiers), std::end(kModifiers), tok.text) != std::end(kModifiers)) {
                if (tok.text == "default" && (!allowDefault || la(1).is(":") || la(1).is("->"))) break;
                if (tok.text == "static") m.isStatic = true;
                next();
                m.any = true;
                continue;
            }
            // contextual modifiers of newer Java versions
            if (tok.isIdentifier() && tok.text == "sealed" && la(1).kind == TokenKind::Keyword) {
                next();
                m.any = true;
                continue;
            }
            break;
        }
        return m;
    }

    // ---- non-throwing scanners ----------------------------------------
    // Returns the index just past a syntactically plausible type starting at i, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t scanAnnotations(std::size_t i) const {
        while (t_[i].is("@") && !t_[i + 1].is("interface")) {
            ++i;
            if (!t_[i].isIdentifier()) return npos;
            ++i;
            while (t_[i].is(".") && t_[i + 1].isIdentifier()) i += 2;
            if (t_[i].is("(")) {
                i = scanBalanced(i);
                if (i == npos) return npos;
            }
        }
        return i;
    }

    std::size_t scanBalanced(std::size_t i) const {
        int depth = 0;
        do {
            const auto& tok = t_[i];
            if (tok.kind == TokenKind::End) return npos;
            if (tok.is("(") || tok.is("{") || tok.is("[")) ++depth;
            if (tok.is(")") || tok.is("}") || tok.is("]")) --depth;
            ++i;
        } while (depth > 0);
        return i;
    }

    std::size_t scanTypeArgs(std::size_t i) const {
        // t_[i] is "<"
        ++i;
        if (t_[i].is(">")) return i + 1;
        for (;;) {
            i = scanAnnotations(i);
            if (i == npos) return npos;
            if (t_[i].is("?")) {
                ++i;
                if (t_[i].is("extends") || t_[i].is("super")) {
                    i = scanType(i + 1);
                    if (i == npos) return npos;
                }
            } else {
                i = scanType(i);
                if (i == npos) return npos;
            }
            if (t_[i].is(",")) {
                ++i;
                continue;
            }
            if (t_[i].is(">")) return i + 1;
            return npos;
        }
    }

    std::size_t scanType(std::size_t i) const {
        i = scanAnnotations(i);
        if (i == npos) return npos;
        if (isPrimitive(t_[i])) {
            ++i;
        } else {
            if (!t_[i].isIdentifier()) return npos;
            ++i;
            if (t_[i].is("<")) {
                i = scanTypeArgs(i);
                if (i == npos) return npos;
            }
            while (t_[i].is(".") && (t_[i + 1].isIdentifier() || t_[i + 1].is("@"))) {
                i = scanAnnotations(i + 1);
                if (i == npos || !t_[i].isIdentifier()) return npos;
                ++i;
                if (t_[i].is("<")) {
                    i = scanTypeArgs(i);
                    if (i == npos) return npos;
                }
            }
        }
        for (;;) {
            auto j = scanAnnotations(i);
            if (j == npos) return npos;
            if (t_[j].is("[") && t_[j + 1].is("]")) {
                i = j + 2;
                continue;
            }
            break;
        }
        return i;
    }

    bool localVarDeclAhead() const {
        auto j = scanType(p_);
        if (j == npos || !t_[j].isIdentifier()) return false;
        const auto& after = t_[j + 1];
        return after.is("=") || after.is(";") || after.is(",") || after.is("[") || after.is(":");
    }

    bool lambdaAhead() const {
        if (cur().isIdentifier() && la(1).is("->")) return true;
        if (!at("(")) return false;
        auto j = scanBalanced(p_);
        return j != npos && t_[j].is("->");
    }

    bool castAhead() const {
        if (!at("(")) return false;
        auto i = p_ + 1;
        auto first = scanAnnotations(i);
        bool primitive = first != npos && isPrimitive(t_[first]);
        auto j = scanType(i);
        if (j == npos) return false;
        while (t_[j].is("&")) {
            j = scanType(j + 1);
            if (j == npos) return false;
            primitive = false;
        }
        if (!t_[j].is(")")) return false;
        if (primitive) return true;
        const auto& after = t_[j + 1];
        if (after.isIdentifier() || after.isLiteral() || isPrimitive(after)) return true;
        return after.is("(") || after.is("!") || after.is("~") || after.is("this") || after.is("super") ||
               after.is("new") || after.is("true") || after.is("false") || after.is("null");
    }

    // ---- types -----------------------------------------------------------
    void typeArgs(std::vector<TypeRef>& out) {
        expect("<");
        if (accept(">")) return;
        for (;;) {
            skipAnnotations();
            if (accept("?")) {
                if (accept("extends") || accept("super")) out.push_back(type());
            } else {
                out.push_back(type());
            }
            if (accept(",")) continue;
            expect(">");
            return;
        }
    }

    TypeRef type() {
        skipAnnotations();
        TypeRef t;
        auto begin = here();
        if (isPrimitive(cur())) {
            t.primitive = true;
            t.nameSpan = cur().span;
            t.parts.push_back(next().text);
        } else {
            t.nameSpan = cur().span;
            t.parts.push_back(expectIdent());
            if (at("<")) typeArgs(t.args);
            while (at(".") && (la(1).isIdentifier() || la(1).is("@"))) {
                next();
                skipAnnotations();
                t.nameSpan = cur().span;
                t.parts.push_back(expectIdent());
                if (at("<")) typeArgs(t.args);
            }
        }
        t.dims += dims();
        t.span = from(begin);
        return t;
    }

    int dims() {
        int n = 0;
        for (;;) {
            auto save = p_;
            skipAnnotations();
            if (at("[") && la(1).is("]")) {
                next();
                next();
                ++n;
                continue;
            }
            p_ = save;
            return n;
        }
    }

    std::vector<TypeParam> typeParams() {
        std::vector<TypeParam> out;
        expect("<");
        for (;;) {
            skipAnnotations();
            TypeParam tp;
            auto begin = here();
            tp.namePos = here();
            tp.name = expectIdent();
            if (accept("extends")) {
                tp.bounds.push_back(type());
                while (accept("&")) tp.bounds.push_back(type());
            }
            tp.span = from(begin);
            out.push_back(std::move(tp));
            if (accept(",")) continue;
            expect(">");
            return out;
        }
    }

    std::vector<TypeRef> typeList() {
        std::vector<TypeRef> out;
        out.push_back(type());
        while (accept(",")) out.push_back(type());
        return out;
    }

    // ---- declarations ------------------------------------------------------
    bool atRecord() const {
        return cur().isIdentifier() && cur().text == "record" && la(1).isIdentifier() && (la(2).is("(") || la(2).is("<"));
    }

    bool atTypeDecl() const {
        return at("class") || at("interface") || at("enum") || (at("@") && la(1).is("interface")) || atRecord();
    }

    TypeDeclPtr typeDecl(const Modifiers& mods) {
        auto decl = std::make_unique<TypeDecl>();
        auto begin = mods.any ? mods.start : here();
        if (accept("class")) {
            decl->kind = TypeKind::Class;
        } else if (accept("interface")) {
            decl->kind = TypeKind::Interface;
        } else if (accept("enum")) {
            decl->kind = TypeKind::Enum;
        } else if (at("@") && la(1).is("interface")) {
            next();
            next();
            decl->kind = TypeKind::Annotation;
        } else if (atRecord()) {
            next();
            decl->isRecord = true;
        } else {
            fail("expected type declaration but found '" + cur().text + "'");
        }
        decl->namePos = here();
        decl->name = expectIdent();
        if (at("<")) decl->typeParams = typeParams();
        if (decl->isRecord) recordComponents(*decl);
        if (accept("extends")) {
            if (decl->kind == TypeKind::Interface)
                decl->extends = typeList();
            else
                decl->extends.push_back(type());
        }
        if (accept("implements")) decl->implements = typeList();
        if (cur().isIdentifier() && cur().text == "permits") {
            next();
            typeList();
        }
        classBody(*decl);
        decl->span = from(begin);
        return decl;
    }

    // Record components become private fields.
    void recordComponents(TypeDecl& decl) {
        expect("(");
        while (!at(")")) {
            auto p = param();
            FieldDecl f;
            f.type = p.type;
            VarDecl v;
            v.type = p.type;
            v.name = p.name;
            v.namePos = p.namePos;
            v.span = p.span;
            f.vars.push_back(std::move(v));
            f.span = p.span;
            decl.fields.push_back(std::move(f));
            if (!accept(",")) break;
        }
        expect(")");
    }

    void enumConstants(TypeDecl& decl) {
        while (!at(";") && !at("}")) {
            skipAnnotations();
            EnumConstant c;
            auto begin = here();
            c.namePos = here();
            c.name = expectIdent();
            if (at("(")) c.args = arguments();
            if (at("{")) {
                c.body = std::make_unique<TypeDecl>();
                classBody(*c.body);
            }
            c.span = from(begin);
            decl.constants.push_back(std::move(c));
            if (!accept(",")) break;
        }
    }

    void classBody(TypeDecl& decl) {
        auto begin = here();
        expect("{");
        if (decl.kind == TypeKind::Enum) {
            enumConstants(decl);
            if (!accept(";")) {
                expect("}");
                if (decl.name.empty()) decl.span = from(begin);
                return;
            }
        }
        while (!accept("}")) {
            if (atEnd()) fail("unexpected end of file in class body");
            member(decl);
        }
        if (decl.name.empty()) decl.span = from(begin);
    }

    void member(TypeDecl& decl) {
        if (accept(";")) return;
        if (at("{")) {
            decl.initializers.push_back({false, block()});
            return;
        }
        auto mods = modifiers(true);
        auto begin = mods.any ? mods.start : here();
        if (at("{")) {
            decl.initializers.push_back({mods.isStatic, block()});
            return;
        }
        if (atTypeDecl()) {
            decl.types.push_back(typeDecl(mods));
            return;
        }
        if (decl.isRecord && cur().isIdentifier() && cur().text == decl.name && la(1).is("{")) {
            // compact canonical constructor
            MethodDecl m;
            m.isConstructor = true;
            m.namePos = here();
            m.name = next().text;
            m.body = block();
            m.span = from(begin);
            decl.methods.push_back(std::move(m));
            return;
        }
        std::vector<TypeParam> tps;
        if (at("<")) tps = typeParams();
        if (cur().isIdentifier() && la(1).is("(")) {
            MethodDecl m;
            m.isConstructor = true;
            m.isStatic = mods.isStatic;
            m.typeParams = std::move(tps);
            m.namePos = here();
            m.name = next().text;
            methodRest(m, begin);
            decl.methods.push_back(std::move(m));
            return;
        }
        auto t = type();
        if (cur().isIdentifier() && la(1).is("(")) {
            MethodDecl m;
            m.isStatic = mods.isStatic;
            m.typeParams = std::move(tps);
            m.returnType = std::move(t);
            m.namePos = here();
            m.name = next().text;
            methodRest(m, begin);
            decl.methods.push_back(std::move(m));
            return;
        }
        FieldDecl f;
        f.isStatic = mods.isStatic;
        f.type = std::move(t);
        declarators(f.vars, begin, f.type);
        expect(";");
        f.span = from(begin);
        decl.fields.push_back(std::move(f));
    }

    void methodRest(MethodDecl& m, Pos begin) {
        expect("(");
        if (!at(")")) {
            for (;;) {
                m.params.push_back(param());
                if (!accept(",")) break;
            }
        }
        expect(")");
        if (m.returnType) m.returnType->dims += dims();
        if (accept("throws")) typeList();
        if (accept("default")) {
            // annotation element default value
            while (!at(";")) {
                if (atEnd()) fail("unexpected end of file");
                if (at("(") || at("{") || at("["))
                    skipBalanced();
                else
                    next();
            }
        }
        if (at("{")) {
            m.body = block();
        } else {
            expect(";");
        }
        m.span = from(begin);
    }

    Param param() {
        auto mods = modifiers(false);
        Param p;
        auto begin = mods.any ? mods.start : here();
        p.type = type();
        skipAnnotations();
        if (accept("...")) {
            p.varargs = true;
            p.type.dims += 1;
        }
        if (at("this")) {
            // receiver parameter
            next();
            p.name = "this";
        } else {
            p.namePos = here();
            p.name = expectIdent();
        }
        p.type.dims += dims();
        p.span = from(begin);
        return p;
    }

    void declarators(std::vector<VarDecl>& out, Pos begin, const TypeRef& t) {
        for (;;) {
            VarDecl v;
            v.type = t;
            v.namePos = here();
            v.name = expectIdent();
            v.extraDims = dims();
            if (v.extraDims) v.type->dims += v.extraDims;
            if (accept("=")) v.init = at("{") ? arrayInit() : expression();
            v.span = from(begin);
            out.push_back(std::move(v));
            if (!accept(",")) return;
        }
    }

    // ---- statements ----------------------------------------------------------
    StmtPtr block() {
        auto begin = here();
        expect("{");
        auto s = std::make_unique<Stmt>(StmtKind::Block, Span{});
        while (!accept("}")) {
            if (atEnd()) fail("unexpected end of file in block");
            s->children.push_back(statement());
        }
        s->span = from(begin);
        return s;
    }

    StmtPtr make(StmtKind k, Pos begin) { return std::make_unique<Stmt>(k, Span{begin, begin}); }
    StmtPtr finish(StmtPtr s) {
        s->span.end = lastEnd_;
        return s;
    }

    StmtPtr localVars(Pos begin) {
        auto s = make(StmtKind::LocalVars, begin);
        s->varType = type();
        declarators(s->vars, begin, *s->varType);
        return s;
    }

    StmtPtr statement() {
        auto begin = here();
        if (at("{")) return block();
        if (accept(";")) return finish(make(StmtKind::Empty, begin));
        if (accept("if")) {
            auto s = make(StmtKind::If, begin);
            expect("(");
            s->exprs.push_back(expression());
            expect(")");
            s->children.push_back(statement());
            if (accept("else")) s->children.push_back(statement());
            return finish(std::move(s));
        }
        if (accept("while")) {
            auto s = make(StmtKind::While, begin);
            expect("(");
            s->exprs.push_back(expression());
            expect(")");
            s->children.push_back(statement());
            return finish(std::move(s));
        }
        if (accept("do")) {
            auto s = make(StmtKind::Do, begin);
            s->children.push_back(statement());
            expect("while");
            expect("(");
            s->exprs.push_back(expression());
            expect(")");
            expect(";");
            return finish(std::move(s));
        }
        if (accept("for")) return forStatement(begin);
        if (accept("try")) return tryStatement(begin);
        if (accept("switch")) {
            auto s = make(StmtKind::Switch, begin);
            expect("(");
            s->exprs.push_back(expression());
            expect(")");
            switchBody(*s);
            return finish(std::move(s));
        }
        if (accept("return") || accept("throw")) {
            auto s = make(t_[p_ - 1].is("return") ? StmtKind::Return : StmtKind::Throw, begin);
            if (!at(";")) s->exprs.push_back(expression());
            expect(";");
            return finish(std::move(s));
        }
        if (accept("break") || accept("continue")) {
            auto s = make(t_[p_ - 1].is("break") ? StmtKind::Break : StmtKind::Continue, begin);
            if (cur().isIdentifier()) next();
            expect(";");
            return finish(std::move(s));
        }
        if (at("synchronized") && la(1).is("(")) {
            next();
            auto s = make(StmtKind::Synchronized, begin);
            expect("(");
            s->exprs.push_back(expression());
            expect(")");
            s->children.push_back(block());
            return finish(std::move(s));
        }
        if (accept("assert")) {
            auto s = make(StmtKind::Assert, begin);
            s->exprs.push_back(expression());
            if (accept(":")) s->exprs.push_back(expression());
            expect(";");
            return finish(std::move(s));
        }
        if (cur().isIdentifier() && cur().text == "yield" && !la(1).is("=") && !la(1).is("(") && !la(1).is(".") &&
            !la(1).is(";")) {
            next();
            auto s = make(StmtKind::Return, begin);
            s->exprs.push_back(expression());
            expect(";");
            return finish(std::move(s));
        }
        if (cur().isIdentifier() && la(1).is(":")) {
            next();
            next();
            auto s = make(StmtKind::Labeled, begin);
            s->children.push_back(statement());
            return finish(std::move(s));
        }
        if (at("class") || at("interface") || at("enum") || at("abstract") || at("final") || at("static") ||
            at("strictfp") || atAnnotation() || atRecord()) {
            auto mods = modifiers(false);
            if (atTypeDecl()) {
                auto s = make(StmtKind::LocalClass, begin);
                s->localClass = typeDecl(mods);
                return finish(std::move(s));
            }
            auto s = localVars(begin);
            expect(";");
            return finish(std::move(s));
        }
        if (localVarDeclAhead()) {
            auto s = localVars(begin);
            expect(";");
            return finish(std::move(s));
        }
        auto s = make(StmtKind::ExprStmt, begin);
        s->exprs.push_back(expression());
        expect(";");
        return finish(std::move(s));
    }

    StmtPtr forStatement(Pos begin) {
        expect("(");
        auto header = here();
        auto mods = modifiers(false);
        if (mods.any || localVarDeclAhead()) {
            auto declBegin = mods.any ? mods.start : here();
            auto t = type();
            auto namePos = here();
            auto name = expectIdent();
            if (accept(":")) {
                auto s = make(StmtKind::ForEach, begin);
                VarDecl v;
                v.type = t;
                v.name = name;
                v.namePos = namePos;
                v.span = from(declBegin);
                s->vars.push_back(std::move(v));
                s->varType = t;
                s->exprs.push_back(expression());
                expect(")");
                s->children.push_back(statement());
                return finish(std::move(s));
            }
            // classic for with declarations: rewind to the name and parse declarators
            auto s = make(StmtKind::For, begin);
            auto init = make(StmtKind::LocalVars, declBegin);
            init->varType = t;
            p_ = namePosIndex(namePos);
            declarators(init->vars, declBegin, t);
            s->children.push_back(finish(std::move(init)));
            return forRest(std::move(s));
        }
        (void)header;
        auto s = make(StmtKind::For, begin);
        while (!at(";")) {
            auto e = make(StmtKind::ExprStmt, here());
            e->exprs.push_back(expression());
            s->children.push_back(finish(std::move(e)));
            if (!accept(",")) break;
        }
        return forRest(std::move(s));
    }

    std::size_t namePosIndex(Pos pos) const {
        for (std::size_t i = p_; i-- > 0;)
            if (t_[i].span.begin == pos) return i;
        return p_;
    }

    StmtPtr forRest(StmtPtr s) {
        expect(";");
        // condition and updates go into exprs; a missing condition is stored as null
        if (!at(";"))
            s->exprs.push_back(expression());
        else
            s->exprs.push_back(nullptr);
        expect(";");
        while (!at(")")) {
            s->exprs.push_back(expression());
            if (!accept(",")) break;
        }
        expect(")");
        auto body = statement();
        s->children.insert(s->children.begin(), std::move(body));
        return finish(std::move(s));
    }

    StmtPtr tryStatement(Pos begin) {
        auto s = make(StmtKind::Try, begin);
        if (accept("(")) {
            while (!at(")")) {
                auto mods = modifiers(false);
                auto rb = mods.any ? mods.start : here();
                if (mods.any || localVarDeclAhead()) {
                    auto t = type();
                    VarDecl v;
                    v.type = t;
                    v.namePos = here();
                    v.name = expectIdent();
                    expect("=");
                    v.init = expression();
                    v.span = from(rb);
                    s->vars.push_back(std::move(v));
                } else {
                    VarDecl v;
                    v.span = {rb, rb};
                    v.init = expression();
                    s->vars.push_back(std::move(v));
                }
                if (!accept(";")) break;
            }
            expect(")");
        }
        s->children.push_back(block());
        while (at("catch")) {
            next();
            expect("(");
            CatchClause c;
            auto mods = modifiers(false);
            auto cb = mods.any ? mods.start : here();
            c.types.push_back(type());
            while (accept("|")) c.types.push_back(type());
            c.param.type = c.types.front();
            c.param.namePos = here();
            c.param.name = expectIdent();
            c.param.span = from(cb);
            expect(")");
            c.body = block();
            s->catches.push_back(std::move(c));
        }
        if (accept("finally")) s->finallyBlock = block();
        if (s->catches.empty() && !s->finallyBlock && s->vars.empty()) fail("try without catch or finally");
        return finish(std::move(s));
    }

    void switchBody(Stmt& s) {
        expect("{");
        while (!accept("}")) {
            SwitchCase c;
            if (accept("default")) {
            } else if (accept("case")) {
                noLambda_ = true;
                for (;;) {
                    c.labels.push_back(ternary());
                    if (!accept(",")) break;
                }
                noLambda_ = false;
            } else {
                fail("expected case label but found '" + cur().text + "'");
            }
            if (accept("->")) {
                if (at("{")) {
                    c.body.push_back(block());
                } else if (at("throw")) {
                    c.body.push_back(statement());
                } else {
                    auto e = make(StmtKind::ExprStmt, here());
                    e->exprs.push_back(expression());
                    expect(";");
                    c.body.push_back(finish(std::move(e)));
                }
            } else {
                expect(":");
                while (!at("case") && !at("default") && !at("}")) {
                    if (atEnd()) fail("unexpected end of file in switch");
                    c.body.push_back(statement());
                }
                // `default` used as a modifier never starts a statement here
            }
            s.cases.push_back(std::move(c));
        }
    }

    // ---- expressions -----------------------------------------------------------
    ExprPtr make(ExprKind k, Pos begin) { return std::make_unique<Expr>(k, Span{begin, begin}); }
    ExprPtr finish(ExprPtr e) {
        e->span.end = lastEnd_;
        return e;
    }

    std::vector<ExprPtr> arguments() {
        std::vector<ExprPtr> args;
        expect("(");
        if (accept(")")) return args;
        for (;;) {
            args.push_back(expression());
            if (accept(",")) continue;
            expect(")");
            return args;
        }
    }

    ExprPtr arrayInit() {
        auto e = make(ExprKind::ArrayInit, here());
        expect("{");
        while (!accept("}")) {
            e->args.push_back(at("{") ? arrayInit() : expression());
            if (!accept(",")) {
                expect("}");
                break;
            }
        }
        return finish(std::move(e));
    }

    /// Glued operator at the cursor (handles `>` sequences); sets `count` to the
    /// number of tokens it spans.
    std::string operatorAhead(std::size_t& count) const {
        count = 1;
        const auto& tok = cur();
        if (tok.kind != TokenKind::Operator) return tok.is("instanceof") ? "instanceof" : "";
        if (!tok.is(">")) return tok.text;
        std::string op = ">";
        std::size_t i = p_;
        while (op.size() < 3 && t_[i + 1].is(">") && adjacent(t_[i], t_[i + 1])) {
            op += '>';
            ++i;
        }
        if (t_[i + 1].is("=") && adjacent(t_[i], t_[i + 1])) {
            op += '=';
            ++i;
        }
        count = i - p_ + 1;
        return op;
    }

    static int precedence(std::string_view op) {
        if (op == "||") return 1;
        if (op == "&&") return 2;
        if (op == "|") return 3;
        if (op == "^") return 4;
        if (op == "&") return 5;
        if (op == "==" || op == "!=") return 6;
        if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof") return 7;
        if (op == "<<" || op == ">>" || op == ">>>") return 8;
        if (op == "+" || op == "-") return 9;
        if (op == "*" || op == "/" || op == "%") return 10;
        return 0;
    }

    ExprPtr expression() {
        if (lambdaAhead()) return lambda();
        auto begin = here();
        auto lhs = ternary();
        std::size_t count = 0;
        auto op = operatorAhead(count);
        if (std::find(std::begin(kAssignOps), std::end(kAssignOps), op) != std::end(kAssignOps)) {
            for (std::size_t k = 0; k < count; ++k) next();
            auto e = make(ExprKind::Assign, begin);
            e->name = op;
            e->args.push_back(std::move(lhs));
            e->args.push_back(at("{") ? arrayInit() : expression());
            return finish(std::move(e));
        }
        return lhs;
    }

    ExprPtr ternary() {
        auto begin = here();
        auto cond = binary(1);
        if (!accept("?")) return cond;
        auto e = make(ExprKind::Conditional, begin);
        e->args.push_back(std::move(cond));
        e->args.push_back(expression());
        expect(":");
        e->args.push_back(lambdaAhead() ? lambda() : ternary());
        return finish(std::move(e));
    }

    ExprPtr binary(int minPrec) {
        auto begin = here();
        auto lhs = unary();
        for (;;) {
            std::size_t count = 0;
            auto op = operatorAhead(count);
            int prec = precedence(op);
            if (prec == 0 || prec < minPrec) return lhs;
            for (std::size_t k = 0; k < count; ++k) next();
            if (op == "instanceof") {
                auto e = make(ExprKind::InstanceOf, begin);
                accept("final");
                e->type = type();
                if (cur().isIdentifier()) next();  // pattern binding
                e->target = std::move(lhs);
                lhs = finish(std::move(e));
                continue;
            }
            auto rhs = binary(prec + 1);
            auto e = make(ExprKind::Binary, begin);
            e->name = op;
            e->args.push_back(std::move(lhs));
            e->args.push_back(std::move(rhs));
            lhs = finish(std::move(e));
        }
    }

    ExprPtr unary() {
        auto begin = here();
        if (at("+") || at("-") || at("++") || at("--") || at("!") || at("~")) {
            auto e = make(ExprKind::Unary, begin);
            e->name = next().text;
            e->target = unary();
            return finish(std::move(e));
        }
        if (castAhead()) {
            next();
            auto e = make(ExprKind::Cast, begin);
            e->type = type();
            while (accept("&")) type();
            expect(")");
            e->target = lambdaAhead() ? lambda() : unary();
            return finish(std::move(e));
        }
        auto e = postfix(primary());
        return e;
    }

    ExprPtr postfix(ExprPtr e) {
        while (at("++") || at("--")) {
            auto u = std::make_unique<Expr>(ExprKind::Unary, e->span);
            u->name = next().text + "post";
            u->target = std::move(e);
            e = finish(std::move(u));
        }
        return e;
    }

    ExprPtr lambda() {
        auto e = make(ExprKind::Lambda, here());
        if (cur().isIdentifier()) {
            VarDecl v;
            v.namePos = here();
            v.name = next().text;
            v.span = from(v.namePos);
            e->lambdaParams.push_back(std::move(v));
        } else {
            expect("(");
            while (!at(")")) {
                auto mods = modifiers(false);
                auto pb = mods.any ? mods.start : here();
                VarDecl v;
                if (cur().isIdentifier() && (la(1).is(",") || la(1).is(")"))) {
                    v.namePos = here();
                    v.name = next().text;
                } else {
                    v.type = type();
                    if (accept("...")) v.type->dims += 1;
                    v.namePos = here();
                    v.name = expectIdent();
                    if (v.type->isVar()) v.type.reset();
                }
                v.span = from(pb);
                e->lambdaParams.push_back(std::move(v));
                if (!accept(",")) break;
            }
            expect(")");
        }
        expect("->");
        if (at("{")) {
            e->lambdaBlock = block();
        } else {
            e->args.push_back(expression());
        }
        return finish(std::move(e));
    }

    static TypeRef typeFromChain(const Expr& e) {
        TypeRef t;
        std::vector<const Expr*> chain;
        const Expr* x = &e;
        while (x->kind == ExprKind::FieldAccess) {
            chain.push_back(x);
            x = x->target.get();
        }
        if (x->kind != ExprKind::Name) throw ParseError(e.span.begin, "expected a type name");
        t.parts.push_back(x->name);
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) t.parts.push_back((*it)->name);
        t.span = e.span;
        t.nameSpan = e.nameSpan;
        return t;
    }

    ExprPtr literal() {
        auto e = make(ExprKind::Literal, here());
        const auto& tok = next();
        switch (tok.kind) {
            case TokenKind::StringLiteral: e->name = "string"; break;
            case TokenKind::CharLiteral: e->name = "char"; break;
            case TokenKind::IntLiteral: e->name = "int"; break;
            case TokenKind::FloatLiteral: e->name = "float"; break;
            default: e->name = tok.text == "null" ? "null" : "boolean"; break;
        }
        return finish(std::move(e));
    }

    ExprPtr creator(Pos begin, ExprPtr outer) {
        if (at("<")) {
            std::vector<TypeRef> ignored;
            typeArgs(ignored);
        }
        skipAnnotations();
        TypeRef t;
        auto tb = here();
        if (isPrimitive(cur())) {
            t.primitive = true;
            t.nameSpan = cur().span;
            t.parts.push_back(next().text);
        } else {
            t.nameSpan = cur().span;
            t.parts.push_back(expectIdent());
            if (at("<")) typeArgs(t.args);
            while (at(".")) {
                next();
                skipAnnotations();
                t.nameSpan = cur().span;
                t.parts.push_back(expectIdent());
                if (at("<")) typeArgs(t.args);
            }
        }
        t.span = from(tb);
        if (at("[") || atAnnotation()) {
            auto e = make(ExprKind::NewArray, begin);
            for (;;) {
                skipAnnotations();
                if (!at("[")) break;
                next();
                if (accept("]")) {
                    ++t.dims;
                    continue;
                }
                e->args.push_back(expression());
                expect("]");
                ++t.dims;
            }
            if (at("{")) e->args.push_back(arrayInit());
            e->type = std::move(t);
            return finish(std::move(e));
        }
        auto e = make(ExprKind::New, begin);
        e->type = std::move(t);
        e->nameSpan = e->type->nameSpan;
        e->target = std::move(outer);
        e->args = arguments();
        if (at("{")) {
            e->body = std::make_unique<TypeDecl>();
            classBody(*e->body);
        }
        return finish(std::move(e));
    }

    ExprPtr primary() {
        auto begin = here();
        ExprPtr e;
        const auto& tok = cur();
        if (tok.isLiteral() || tok.is("true") || tok.is("false") || tok.is("null")) {
            e = literal();
        } else if (tok.is("this")) {
            next();
            if (at("(")) {
                e = make(ExprKind::Call, begin);
                e->name = "this";
                e->nameSpan = tok.span;
                e->args = arguments();
                e = finish(std::move(e));
            } else {
                e = finish(make(ExprKind::This, begin));
            }
        } else if (tok.is("super")) {
            auto superSpan = tok.span;
            next();
            if (at("(")) {
                e = make(ExprKind::Call, begin);
                e->name = "super";
                e->nameSpan = superSpan;
                e->args = arguments();
                e = finish(std::move(e));
            } else {
                e = finish(make(ExprKind::Super, begin));
            }
        } else if (tok.is("new")) {
            next();
            e = creator(begin, nullptr);
        } else if (tok.is("(")) {
            if (lambdaAhead()) return lambda();
            next();
            e = expression();
            expect(")");
            e->span = from(begin);
        } else if (isPrimitive(tok)) {
            auto t = type();
            e = classLiteralOrRef(begin, std::move(t));
        } else if (tok.isIdentifier()) {
            if (!noLambda_ && la(1).is("->")) return lambda();
            if (la(1).is("[") && la(2).is("]")) {
                auto t = type();
                e = classLiteralOrRef(begin, std::move(t));
            } else if (la(1).is("<") && genericTypeRefAhead()) {
                auto t = type();
                e = classLiteralOrRef(begin, std::move(t));
            } else {
                auto nameSpan = tok.span;
                auto name = next().text;
                if (at("(")) {
                    e = make(ExprKind::Call, begin);
                    e->name = name;
                    e->nameSpan = nameSpan;
                    e->args = arguments();
                    e = finish(std::move(e));
                } else {
                    e = make(ExprKind::Name, begin);
                    e->name = name;
                    e->nameSpan = nameSpan;
                    e = finish(std::move(e));
                }
            }
        } else if (tok.is("switch")) {
            // switch expression: walk it like a statement wrapped in a lambda block
            auto s = statement();
            e = make(ExprKind::Lambda, begin);
            e->lambdaBlock = std::move(s);
            e->name = "switch";
            e = finish(std::move(e));
        } else {
            fail("unexpected '" + tok.text + "' in expression");
        }
        return selectors(begin, std::move(e));
    }

    bool genericTypeRefAhead() const {
        // `List<String>::new` or `Foo<Bar>.class`-like forms
        auto j = scanType(p_);
        return j != npos && (t_[j].is("::"));
    }

    ExprPtr classLiteralOrRef(Pos begin, TypeRef t) {
        if (accept("::")) {
            auto e = make(ExprKind::MethodRef, begin);
            e->type = std::move(t);
            e->nameSpan = cur().span;
            e->name = at("new") ? next().text : expectIdent();
            return finish(std::move(e));
        }
        expect(".");
        expect("class");
        auto e = make(ExprKind::ClassLit, begin);
        e->type = std::move(t);
        return finish(std::move(e));
    }

    ExprPtr selectors(Pos begin, ExprPtr e) {
        for (;;) {
            if (at(".")) {
                next();
                if (at("<")) {
                    std::vector<TypeRef> ignored;
                    typeArgs(ignored);
                }
                if (at("new")) {
                    next();
                    e = creator(begin, std::move(e));
                    continue;
                }
                if (at("this")) {
                    next();
                    auto q = make(ExprKind::This, begin);
                    q->type = typeFromChain(*e);
                    e = finish(std::move(q));
                    continue;
                }
                if (at("class")) {
                    next();
                    auto q = make(ExprKind::ClassLit, begin);
                    q->type = typeFromChain(*e);
                    e = finish(std::move(q));
                    continue;
                }
                if (at("super")) {
                    next();
                    auto q = make(ExprKind::Super, begin);
                    q->type = typeFromChain(*e);
                    e = finish(std::move(q));
                    continue;
                }
                auto nameSpan = cur().span;
                auto name = expectIdent();
                if (at("(")) {
                    auto c = make(ExprKind::Call, begin);
                    c->name = name;
                    c->nameSpan = nameSpan;
                    c->target = std::move(e);
                    c->args = arguments();
                    e = finish(std::move(c));
                } else {
                    auto f = make(ExprKind::FieldAccess, begin);
                    f->name = name;
                    f->nameSpan = nameSpan;
                    f->target = std::move(e);
                    e = finish(std::move(f));
                }
                continue;
            }
            if (at("[")) {
                if (la(1).is("]")) {
                    auto t = typeFromChain(*e);
                    t.dims = dims();
                    return classLiteralOrRef(begin, std::move(t));
                }
                next();
                auto ix = make(ExprKind::Index, begin);
                ix->target = std::move(e);
                ix->args.push_back(expression());
                expect("]");
                e = finish(std::move(ix));
                continue;
            }
            if (at("::")) {
                next();
                auto r = make(ExprKind::MethodRef, begin);
                r->nameSpan = cur().span;
                r->name = at("new") ? next().text : expectIdent();
                r->target = std::move(e);
                e = finish(std::move(r));
                continue;
            }
            return e;
        }
    }

    std::vector<Token> t_;
    std::size_t p_ = 0;
    Pos lastEnd_;
    bool noLambda_ = false;
};

}  // namespace

CompilationUnit parseCompilationUnit(std::string_view source) {
    Parser parser(tokenize(source));
    return parser.compilationUnit();
}

}  // namespace scg::java
