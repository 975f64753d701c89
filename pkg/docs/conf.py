# Copyright 2024 BDP Ecosystem Limited. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================

# Sphinx configuration for the schurample API reference.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import shutil
import sys

sys.path.insert(0, os.path.abspath('../'))
sys.path.insert(0, os.path.abspath('./'))

import schurample
import auto_generater

os.makedirs('apis/', exist_ok=True)
shutil.copyfile('../changelog.md', 'apis/changelog.md')
auto_generater.main()

# -- Project information -----------------------------------------------------

project = 'schurample'
copyright = '2025, schurample'
author = 'schurample Developers'
release = schurample.__version__

# -- General configuration ---------------------------------------------------

extensions = [
  'sphinx.ext.autodoc',
  'sphinx.ext.autosummary',
  'sphinx.ext.intersphinx',
  'sphinx.ext.mathjax',
  'sphinx.ext.napoleon',
  'sphinx.ext.viewcode',
  'sphinx_autodoc_typehints',
  'myst_parser',
  'sphinx_math_dollar',
]
templates_path = ['_templates']
source_suffix = ['.rst', '.md']
master_doc = 'index'
autosummary_generate = True

intersphinx_mapping = {
  'python': ('https://docs.python.org/3.13', None),
  'numpy': ('https://numpy.org/doc/stable', None),
  'sympy': ('https://docs.sympy.org/latest', None),
}

# NamedTuple records expose ``count`` and ``index`` from ``tuple``.
autodoc_default_options = {
  'exclude-members': 'count, index',
}
napoleon_numpy_docstring = True
napoleon_google_docstring = False

myst_enable_extensions = ['dollarmath', 'amsmath']
suppress_warnings = ['myst.header']

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

# -- HTML output -------------------------------------------------------------

html_theme = 'sphinx_book_theme'
html_title = 'schurample'
html_static_path = []
html_theme_options = {
  'show_toc_level': 2,
}
