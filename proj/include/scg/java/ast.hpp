#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scg/java/lexer.hpp"

namespace scg::java {

/// A written type: `java.util.Map.Entry<K, V>[]`. Type arguments of every
/// segment are collected into `args`; they do not participate in resolution.
struct TypeRef {
    std::vector<std::string> parts;
    std::vector<TypeRef> args;
    int dims = 0;
    bool primitive = false;  // includes `void`
    Span span;
    Span nameSpan;           // span of the last name segment

    std::string name() const;
    bool isVar() const { return !primitive && parts.size() == 1 && parts[0] == "var" && dims == 0; }
};

struct Expr;
struct Stmt;
struct TypeDecl;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;
using TypeDeclPtr = std::unique_ptr<TypeDecl>;

/// One declared variable: a local, a field declarator, a lambda/catch parameter.
struct VarDecl {
    std::optional<TypeRef> type;  // absent for untyped lambda parameters
    std::string name;
    Pos namePos;
    Span span;
    ExprPtr init;
    int extraDims = 0;  // `int a[]`
};

enum class ExprKind {
    Name,         // name
    FieldAccess,  // target.name
    Call,         // [target.]name(args); name is "this"/"super" for explicit constructor calls
    New,          // new type(args) [body]
    NewArray,     // new type[args...] [init]
    ArrayInit,    // { args }
    Literal,      // name holds the literal kind: string, char, int, float, boolean, null
    This,         // [type.]this
    Super,        // bare `super` used as a call/field qualifier
    Unary,
    Binary,
    Assign,
    Conditional,
    Cast,
    InstanceOf,
    Index,
    Lambda,
    MethodRef,    // target::name, target may be a Name naming a type
    ClassLit,     // type.class
};

struct Expr {
    ExprKind kind;
    Span span;
    std::string name;
    Span nameSpan;
    ExprPtr target;
    std::vector<ExprPtr> args;
    std::optional<TypeRef> type;
    TypeDeclPtr body;                 // anonymous class body
    std::vector<VarDecl> lambdaParams;
    StmtPtr lambdaBlock;              // block-bodied lambda; otherwise args[0] is the body

    Expr(ExprKind k, Span s) : kind(k), span(s) {}
};

enum class StmtKind {
    Block, LocalVars, LocalClass, ExprStmt, If, While, Do, For, ForEach, Return, Throw,
    Try, Switch, Synchronized, Labeled, Break, Continue, Assert, Empty,
};

struct CatchClause {
    std::vector<TypeRef> types;
    VarDecl param;
    StmtPtr body;
};

struct SwitchCase {
    std::vector<ExprPtr> labels;  // empty for `default`
    std::vector<StmtPtr> body;
};

struct Stmt {
    StmtKind kind;
    Span span;
    std::vector<StmtPtr> children;   // Block statements, bodies, For init statements
    std::vector<ExprPtr> exprs;      // conditions, values, For updates
    std::vector<VarDecl> vars;       // LocalVars, ForEach variable, Try resources
    std::optional<TypeRef> varType;  // declared type of `vars`
    TypeDeclPtr localClass;
    std::vector<CatchClause> catches;
    StmtPtr finallyBlock;
    std::vector<SwitchCase> cases;

    Stmt(StmtKind k, Span s) : kind(k), span(s) {}
};

struct TypeParam {
    std::string name;
    Pos namePos;
    Span span;
    std::vector<TypeRef> bounds;
};

struct Param {
    TypeRef type;
    std::string name;
    Pos namePos;
    Span span;
    bool varargs = false;
};

struct MethodDecl {
    std::string name;
    Pos namePos;
    Span span;
    bool isConstructor = false;
    bool isStatic = false;
    std::vector<TypeParam> typeParams;
    std::optional<TypeRef> returnType;
    std::vector<Param> params;
    StmtPtr body;  // null when abstract/native
};

struct FieldDecl {
    TypeRef type;
    std::vector<VarDecl> vars;
    Span span;
    bool isStatic = false;
};

struct EnumConstant {
    std::string name;
    Pos namePos;
    Span span;
    std::vector<ExprPtr> args;
    TypeDeclPtr body;
};

struct Initializer {
    bool isStatic = false;
    StmtPtr body;
};

enum class TypeKind { Class, Interface, Enum, Annotation };

struct TypeDecl {
    TypeKind kind = TypeKind::Class;
    bool isRecord = false;
    std::string name;  // empty for anonymous class bodies
    Pos namePos;
    Span span;
    std::vector<TypeParam> typeParams;
    std::vector<TypeRef> extends;
    std::vector<TypeRef> implements;
    std::vector<EnumConstant> constants;
    std::vector<FieldDecl> fields;
    std::vector<MethodDecl> methods;
    std::vector<TypeDeclPtr> types;
    std::vector<Initializer> initializers;
};

struct Import {
    std::string name;  // without the trailing `.*`
    bool isStatic = false;
    bool wildcard = false;
};

struct CompilationUnit {
    std::string packageName;
    std::vector<Import> imports;
    std::vector<TypeDeclPtr> types;
};

/// Parses one compilation unit; throws ParseError on the first syntax error.
CompilationUnit parseCompilationUnit(std::string_view source);

}  // namespace scg::java
