"""
Standalone HTML page for family reports (tabs per section, no external assets)
"""
from html import escape
from string import Template
from typing import Mapping

HTML_TEMPLATE = Template("""<!DOCTYPE html>
<html>
<head>
    <meta charset="utf-8">
    <title>$title</title>
    <style>
        body {
            font-family: system-ui, -apple-system, sans-serif;
            line-height: 1.5;
            margin: 0;
            padding: 20px;
            background: #1e1e1e;
            color: #d4d4d4;
        }
        .container {
            max-width: 1200px;
            margin: 0 auto;
            background: #252526;
            padding: 20px;
            border-radius: 8px;
        }
        .tabs {
            display: flex;
            flex-wrap: wrap;
            gap: 2px;
            margin-bottom: 20px;
            background: #2d2d2d;
            padding: 5px;
            border-radius: 6px;
        }
        .tab {
            padding: 8px 16px;
            cursor: pointer;
            border: none;
            background: none;
            border-radius: 4px;
            color: #d4d4d4;
        }
        .tab.active {
            background: #3c3c3c;
            color: #fff;
        }
        .content {
            display: none;
        }
        .content.active {
            display: block;
        }
        .collection {
            color: #888;
            margin-bottom: 20px;
            padding-bottom: 20px;
            border-bottom: 1px solid #333;
        }
        h1 {
            margin-top: 0;
            font-weight: 500;
        }
        h2, h3 {
            color: #569cd6;
            font-weight: 500;
        }
        table {
            border-collapse: collapse;
            margin-bottom: 16px;
        }
        th, td {
            border: 1px solid #333;
            padding: 4px 10px;
        }
        td:last-child, th:last-child {
            text-align: right;
        }
        code {
            color: #ce9178;
        }
    </style>
</head>
<body>
    <div class="container">
        <h1>$title</h1>
        <div class="collection">$subtitle</div>
        <div class="tabs">
$tabs
        </div>
$sections
    </div>
    <script>
        document.querySelectorAll('.tab').forEach(tab => {
            tab.addEventListener('click', () => {
                document.querySelectorAll('.content, .tab').forEach(e => e.classList.remove('active'));
                document.getElementById(tab.dataset.tab).classList.add('active');
                tab.classList.add('active');
            });
        });
    </script>
</body>
</html>
""")


def render_page(title: str, subtitle: str, sections: Mapping[str, str]) -> str:
    """Page with one tab per (already rendered) HTML section, the first one active"""
    tabs, bodies = [], []
    for position, (name, body) in enumerate(sections.items()):
        tab_id = f"section-{position}"
        active = " active" if position == 0 else ""
        tabs.append(f'            <button class="tab{active}" data-tab="{tab_id}">{escape(name)}</button>')
        bodies.append(f'        <div class="content{active}" id="{tab_id}">\n{body}        </div>')
    return HTML_TEMPLATE.substitute(
        title=escape(title),
        subtitle=escape(subtitle),
        tabs="\n".join(tabs),
        sections="\n".join(bodies),
    )
