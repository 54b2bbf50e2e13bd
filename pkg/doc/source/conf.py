# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.

import os
import sys
sys.path.insert(0, os.path.abspath('../../python'))


# -- Project information -----------------------------------------------------

project = u'COMETSim'
copyright = u'2024, COMETSim developers'
author = u'COMETSim developers'

# The short X.Y version
version = u'1.0'
# The full version, including alpha/beta/rc tags
release = u'1.0.0'


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
]
autodoc_default_options = {'members': True, 'undoc-members': True}

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
language = None
exclude_patterns = []
pygments_style = None


# -- Options for HTML output -------------------------------------------------

html_theme = 'classic'
html_static_path = ['_static']
htmlhelp_basename = 'COMETSimdoc'


# -- Options for manual page output ------------------------------------------

man_pages = [
    (master_doc, 'cometsim', u'COMETSim Documentation',
     [author], 1)
]
