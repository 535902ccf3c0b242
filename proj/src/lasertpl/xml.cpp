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

#include "lasertpl/xml.hpp"

#include "lasertpl/error.hpp"

#include <expat.h>

#include <memory>

namespace lasertpl::xml {

const std::string* Node::attribute(std::string_view attrName) const {
    for (const Attribute& a : attributes) {
        if (a.name == attrName) {
            return &a.value;
        }
    }
    return nullptr;
}

void Node::setAttribute(std::string_view attrName, std::string value) {
    for (Attribute& a : attributes) {
        if (a.name == attrName) {
            a.value = std::move(value);
            return;
        }
    }
    attributes.push_back({std::string(attrName), std::move(value)});
}

bool Node::removeAttribute(std::string_view attrName) {
    for (auto it = attributes.begin(); it != attributes.end(); ++it) {
        if (it->name == attrName) {
            attributes.erase(it);
            return true;
        }
    }
    return false;
}

std::string Node::textContent() const {
    std::string s;
    for (const Node& c : children) {
        if (c.kind == NodeKind::Text || c.kind == NodeKind::CData) {
            s += c.text;
        }
    }
    return s;
}

namespace {

struct ParserState {
    XmlDocument doc;
    std::vector<Node*> stack; // open elements; empty before/after root
    bool rootSeen = false;
    bool inCData = false;

    std::vector<Node>& currentContainer() {
        if (!stack.empty()) {
            return stack.back()->children;
        }
        return rootSeen ? doc.epilog : doc.prolog;
    }

    void appendText(NodeKind kind, std::string_view s) {
        if (stack.empty()) {
            return; // whitespace between top-level nodes
        }
        auto& children = stack.back()->children;
        if (!children.empty() && children.back().kind == kind) {
            children.back().text.append(s);
            return;
        }
        Node n;
        n.kind = kind;
        n.text = std::string(s);
        children.push_back(std::move(n));
    }
};

void XMLCALL onStart(void* data, const XML_Char* name, const XML_Char** atts) {
    auto* st = static_cast<ParserState*>(data);
    Node n = Node::element(name);
    for (int i = 0; atts[i]; i += 2) {
        n.attributes.push_back({atts[i], atts[i + 1]});
    }
    if (st->stack.empty()) {
        st->doc.root = std::move(n);
        st->rootSeen = true;
        st->stack.push_back(&st->doc.root);
        return;
    }
    auto& children = st->stack.back()->children;
    children.push_back(std::move(n));
    st->stack.push_back(&children.back());
}

void XMLCALL onEnd(void* data, const XML_Char*) {
    auto* st = static_cast<ParserState*>(data);
    st->stack.pop_back();
}

void XMLCALL onChars(void* data, const XML_Char* s, int len) {
    auto* st = static_cast<ParserState*>(data);
    st->appendText(st->inCData ? NodeKind::CData : NodeKind::Text,
                   std::string_view(s, static_cast<std::size_t>(len)));
}

void XMLCALL onComment(void* data, const XML_Char* text) {
    auto* st = static_cast<ParserState*>(data);
    Node n;
    n.kind = NodeKind::Comment;
    n.text = text;
    st->currentContainer().push_back(std::move(n));
}

void XMLCALL onPI(void* data, const XML_Char* target, const XML_Char* pidata) {
    auto* st = static_cast<ParserState*>(data);
    Node n;
    n.kind = NodeKind::ProcessingInstruction;
    n.name = target;
    n.text = pidata ? pidata : "";
    st->currentContainer().push_back(std::move(n));
}

void XMLCALL onCDataStart(void* data) {
    auto* st = static_cast<ParserState*>(data);
    st->inCData = true;
    // An empty CDATA section still has to produce a node.
    if (!st->stack.empty()) {
        Node n;
        n.kind = NodeKind::CData;
        st->stack.back()->children.push_back(std::move(n));
    }
}

void XMLCALL onCDataEnd(void* data) {
    static_cast<ParserState*>(data)->inCData = false;
}

void XMLCALL onXmlDecl(void* data, const XML_Char* version, const XML_Char* encoding,
                       int standalone) {
    auto* st = static_cast<ParserState*>(data);
    if (!version) {
        return; // text declaration of an external entity
    }
    XmlDeclaration decl;
    decl.version = version;
    decl.encoding = encoding ? encoding : "";
    decl.standalone = standalone;
    st->doc.declaration = decl;
}

void XMLCALL onDoctype(void* data, const XML_Char* name, const XML_Char* sysid,
                       const XML_Char* pubid, int) {
    auto* st = static_cast<ParserState*>(data);
    Doctype dt;
    dt.name = name;
    dt.systemId = sysid ? sysid : "";
    dt.publicId = pubid ? pubid : "";
    st->doc.doctype = dt;
}

struct ParserDeleter {
    void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

void escapeInto(std::string_view s, std::string& out, bool attribute) {
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            if (attribute) {
                out += "&quot;";
            }
            else {
                out += c;
            }
            break;
        case '\n':
            out += attribute ? "&#10;" : "\n";
            break;
        case '\t':
            out += attribute ? "&#9;" : "\t";
            break;
        case '\r':
            out += "&#13;";
            break;
        default:
            out += c;
        }
    }
}

std::string_view trimmed(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

// Children normalized for comparison: adjacent text/CDATA merged and
// trimmed, whitespace-only runs dropped.
struct NormalizedChild {
    const Node* element = nullptr;
    NodeKind kind = NodeKind::Text;
    std::string text;
};

std::vector<NormalizedChild> normalizedChildren(const Node& n) {
    std::vector<NormalizedChild> out;
    std::string pending;
    bool haveText = false;
    auto flush = [&]() {
        if (haveText) {
            auto t = trimmed(pending);
            if (!t.empty()) {
                out.push_back({nullptr, NodeKind::Text, std::string(t)});
            }
        }
        pending.clear();
        haveText = false;
    };
    for (const Node& c : n.children) {
        if (c.kind == NodeKind::Text || c.kind == NodeKind::CData) {
            pending += c.text;
            haveText = true;
            continue;
        }
        flush();
        if (c.kind == NodeKind::Element) {
            out.push_back({&c, NodeKind::Element, {}});
        }
        else {
            out.push_back({nullptr, c.kind, c.name + "\x1f" + c.text});
        }
    }
    flush();
    return out;
}

} // namespace

XmlDocument parse(std::string_view text) {
    std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
    if (!parser) {
        fail(ErrorKind::Io, "cannot allocate XML parser");
    }
    ParserState state;
    XML_SetUserData(parser.get(), &state);
    XML_SetElementHandler(parser.get(), onStart, onEnd);
    XML_SetCharacterDataHandler(parser.get(), onChars);
    XML_SetCommentHandler(parser.get(), onComment);
    XML_SetProcessingInstructionHandler(parser.get(), onPI);
    XML_SetCdataSectionHandler(parser.get(), onCDataStart, onCDataEnd);
    XML_SetXmlDeclHandler(parser.get(), onXmlDecl);
    XML_SetStartDoctypeDeclHandler(parser.get(), onDoctype);

    if (XML_Parse(parser.get(), text.data(), static_cast<int>(text.size()), XML_TRUE)
        == XML_STATUS_ERROR) {
        auto offset = static_cast<std::size_t>(XML_GetCurrentByteIndex(parser.get()));
        std::string msg = "XML syntax error at line "
                          + std::to_string(XML_GetCurrentLineNumber(parser.get()))
                          + ", column "
                          + std::to_string(XML_GetCurrentColumnNumber(parser.get()) + 1)
                          + " (offset " + std::to_string(offset)
                          + "): " + XML_ErrorString(XML_GetErrorCode(parser.get()));
        throw Error(ErrorKind::Syntax, msg, offset);
    }
    return std::move(state.doc);
}

void serializeNode(const Node& node, std::string& out) {
    switch (node.kind) {
    case NodeKind::Text:
        escapeInto(node.text, out, false);
        return;
    case NodeKind::CData:
        out += "<![CDATA[";
        out += node.text;
        out += "]]>";
        return;
    case NodeKind::Comment:
        out += "<!--";
        out += node.text;
        out += "-->";
        return;
    case NodeKind::ProcessingInstruction:
        out += "<?";
        out += node.name;
        if (!node.text.empty()) {
            out += ' ';
            out += node.text;
        }
        out += "?>";
        return;
    case NodeKind::Element:
        break;
    }
    out += '<';
    out += node.name;
    for (const Attribute& a : node.attributes) {
        out += ' ';
        out += a.name;
        out += "=\"";
        escapeInto(a.value, out, true);
        out += '"';
    }
    if (node.children.empty()) {
        out += "/>";
        return;
    }
    out += '>';
    for (const Node& c : node.children) {
        serializeNode(c, out);
    }
    out += "</";
    out += node.name;
    out += '>';
}

std::string serialize(const XmlDocument& doc) {
    std::string out;
    if (doc.declaration) {
        out += "<?xml version=\"" + doc.declaration->version + "\"";
        if (!doc.declaration->encoding.empty()) {
            out += " encoding=\"" + doc.declaration->encoding + "\"";
        }
        if (doc.declaration->standalone >= 0) {
            out += doc.declaration->standalone ? " standalone=\"yes\"" : " standalone=\"no\"";
        }
        out += "?>\n";
    }
    if (doc.doctype) {
        out += "<!DOCTYPE " + doc.doctype->name;
        if (!doc.doctype->publicId.empty()) {
            out += " PUBLIC \"" + doc.doctype->publicId + "\" \"" + doc.doctype->systemId + "\"";
        }
        else if (!doc.doctype->systemId.empty()) {
            out += " SYSTEM \"" + doc.doctype->systemId + "\"";
        }
        out += ">\n";
    }
    for (const Node& n : doc.prolog) {
        serializeNode(n, out);
        out += '\n';
    }
    serializeNode(doc.root, out);
    out += '\n';
    for (const Node& n : doc.epilog) {
        serializeNode(n, out);
        out += '\n';
    }
    return out;
}

bool domEqual(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.name != b.name) {
        return false;
    }
    if (!a.isElement()) {
        return trimmed(a.text) == trimmed(b.text);
    }
    if (a.attributes != b.attributes) {
        return false;
    }
    auto ca = normalizedChildren(a);
    auto cb = normalizedChildren(b);
    if (ca.size() != cb.size()) {
        return false;
    }
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (ca[i].kind != cb[i].kind) {
            return false;
        }
        if (ca[i].kind == NodeKind::Element) {
            if (!domEqual(*ca[i].element, *cb[i].element)) {
                return false;
            }
        }
        else if (ca[i].text != cb[i].text) {
            return false;
        }
    }
    return true;
}

bool domEqual(const XmlDocument& a, const XmlDocument& b) {
    auto miscEqual = [](const std::vector<Node>& x, const std::vector<Node>& y) {
        if (x.size() != y.size()) {
            return false;
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!domEqual(x[i], y[i])) {
                return false;
            }
        }
        return true;
    };
    return miscEqual(a.prolog, b.prolog) && domEqual(a.root, b.root)
           && miscEqual(a.epilog, b.epilog);
}

} // namespace lasertpl::xml
