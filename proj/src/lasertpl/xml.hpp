// Copyright 2026 The lasertpl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LASERTPL_XML_HPP
#define LASERTPL_XML_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lasertpl::xml {

enum class NodeKind { Element, Text, CData, Comment, ProcessingInstruction };

struct Attribute {
    std::string name; // qualified name exactly as written, e.g. "laser:kerf"
    std::string value;

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

/// A node of the lossless XML tree. Element names and attribute names are kept
/// as qualified names; no namespace processing happens at this level so that
/// serialization reproduces prefixes verbatim.
struct Node {
    NodeKind kind = NodeKind::Element;
    std::string name;         // element name or PI target
    std::string text;         // character data, comment text or PI data
    std::vector<Attribute> attributes;
    std::vector<Node> children;

    static Node element(std::string name) {
        Node n;
        n.kind = NodeKind::Element;
        n.name = std::move(name);
        return n;
    }

    static Node textNode(std::string text) {
        Node n;
        n.kind = NodeKind::Text;
        n.text = std::move(text);
        return n;
    }

    bool isElement() const { return kind == NodeKind::Element; }

    const std::string* attribute(std::string_view attrName) const;
    bool hasAttribute(std::string_view attrName) const { return attribute(attrName) != nullptr; }

    // Replaces the value in place if present, otherwise appends.
    void setAttribute(std::string_view attrName, std::string value);

    bool removeAttribute(std::string_view attrName);

    // Concatenated text and CDATA content of direct children.
    std::string textContent() const;
};

struct XmlDeclaration {
    std::string version = "1.0";
    std::string encoding;
    int standalone = -1; // -1 absent, 0 no, 1 yes
};

struct Doctype {
    std::string name;
    std::string systemId;
    std::string publicId;
};

/// A parsed XML file: optional declaration and doctype, top-level
/// misc nodes (comments, PIs) around exactly one root element.
struct XmlDocument {
    std::optional<XmlDeclaration> declaration;
    std::optional<Doctype> doctype;
    std::vector<Node> prolog;
    Node root;
    std::vector<Node> epilog;
};

/// Parses UTF-8 XML. Throws lasertpl::Error(Syntax) with byte offset, line and
/// column in the message on malformed input.
XmlDocument parse(std::string_view text);

std::string serialize(const XmlDocument& doc);

void serializeNode(const Node& node, std::string& out);

/// Document-object-model equality ignoring whitespace-only text and
/// surrounding whitespace of text runs. Attribute order is significant.
bool domEqual(const Node& a, const Node& b);

bool domEqual(const XmlDocument& a, const XmlDocument& b);

} // namespace lasertpl::xml

#endif // LASERTPL_XML_HPP
