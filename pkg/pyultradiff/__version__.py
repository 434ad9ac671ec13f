# -*- coding: utf-8 -*-

# pyultradiff's package version information
__author__ = "Le Tuan Anh"
__email__ = "tuananh.ke@gmail.com"
__copyright__ = "Copyright (c) 2021, Le Tuan Anh"
__credits__ = []
__license__ = "MIT License"
__description__ = "Weight sequences, weight functions, weight matrices and flat functions for ultradifferentiable classes"
__url__ = "https://github.com/letuananh/pyultradiff"
__maintainer__ = "Le Tuan Anh"
__version_major__ = "0.1"
__version__ = "{}a1".format(__version_major__)
__version_long__ = "{} - Alpha".format(__version_major__)
__status__ = "Prototype"
