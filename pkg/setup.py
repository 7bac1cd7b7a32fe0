#!/usr/bin/env python

from setuptools import setup

setup(name='specrec',
        version='0.9a1',
        description='Exact Laplacian spectra and the spectral recursion for '
            'simplicial complexes, matroids and shifted complexes.',
        packages=['specrec'],
        package_dir={'specrec': 'src/python/specrec'},
        python_requires='>=3.8',
        install_requires=['simplejson', 'numpy', 'sympy', 'networkx'],
        extras_require={
            'tests': ['pytest', 'hypothesis'],
        },
        entry_points = {
            'console_scripts': [
                'specrec = specrec.cli:specrec',
            ]
        }
    )
