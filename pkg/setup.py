import io
from setuptools import setup


with io.open('README.md', 'rt', encoding='utf8') as readme_file:
    readme = readme_file.read()

with io.open('VERSION', 'rt', encoding='utf8') as version_file:
    version = version_file.read().strip()

setup(
    name='astopo',
    version=version,
    license='MIT',
    description='Generate synthetic AS-level Internet topologies and measure them.',
    long_description=readme,
    long_description_content_type='text/markdown',
    packages=[r'astopo'],
    package_data={'astopo': ['data/*.csv']},
    python_requires='>=3.8',
    install_requires=['iso8601',
                      'packaging',
                      'wakepy>=0.7.1',
                      'numpy',
                      'scipy',
                      'networkx'],
    entry_points={'console_scripts': ['astopo = astopo.cli:main']},
    classifiers=['Programming Language :: Python :: 3']
)
