#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aaa/source_model.hpp"

namespace aaa::java {

struct TypeDecl {
    std::string kind;  // class | interface | enum | record | annotation
    std::string name;
    std::string superclass;
    SourceRange range;
    std::vector<MethodModel> methods;
    std::vector<FieldModel> fields;
    std::vector<TypeDecl> nested;
    // Methods of anonymous and local classes created inside this type's members.
    std::vector<MethodModel> inner_methods;
};

struct CompilationUnit {
    std::string package;
    std::vector<ImportModel> imports;
    std::vector<TypeDecl> types;
};

// Throws ParseError.
CompilationUnit parse_compilation_unit(std::string_view source);

// Parses exactly one block statement spanning all of `source`.
Statement parse_single_statement(std::string_view source);

}  // namespace aaa::java
