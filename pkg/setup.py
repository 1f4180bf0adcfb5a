__author__ = 'kripkelab developers'

try:
    from setuptools import setup
except ImportError:
    from distutils.core import setup
from kripkelab import __version__, __name__, __email__, __url__
import os

README = 'README.rst'
try:
    with open(os.path.join(os.path.dirname(__file__), README), 'r') as readme:
        README = readme.read()
except IOError:
    pass

INSTALL_REQUIRES = [
    'numpy>=1.17.0', 'scipy>=1.3.0', 'networkx>=2.4', 'lark>=1.0.0'
]

TESTS_REQUIRES = [
    'pytest>=3.2.1', 'hypothesis>=5.0.0'
]

CLASSIFIERS = [
    'Development Status :: 3 - Alpha',
    'License :: OSI Approved :: BSD License',
    'Operating System :: OS Independent',
    'Intended Audience :: Science/Research',
    'Programming Language :: Python',
    'Programming Language :: Python :: 3',
    'Programming Language :: Python :: 3.7',
    'Programming Language :: Python :: 3.8',
    'Programming Language :: Python :: 3.9',
    'Topic :: Scientific/Engineering :: Mathematics',
]

setup(
    name=__name__,
    version=__version__,
    description='Finite Kripke frame workbench',
    long_description=README,
    author=__author__,
    author_email=__email__,
    url=__url__,
    license='BSD 3-clause',
    packages=[
        'kripkelab', 'kripkelab.kripkelab_lib', 'kripkelab.kripkelab_cli',
        'kripkelab.contrib', 'kripkelab.contrib.oracles'
    ],
    install_requires=INSTALL_REQUIRES,
    tests_require=TESTS_REQUIRES,
    extras_require={'version': ['dulwich>=0.18.6']},
    scripts=['kf_cli.py'],
    entry_points={
        'console_scripts': [
            'kripkelab = kripkelab.kripkelab_cli.kfapplication_cli:main'
        ]
    },
    package_data={
        'kripkelab': [
            'kripkelab_json/messagetext.English.json',
            'kripkelab_json/validationConstants.json'
        ]
    },
    classifiers=CLASSIFIERS
)
