from setuptools import setup, find_packages

setup(
    name="quls-arma",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"quls_arma.data": ["stored_energy.csv"]},
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.8",
        "pandas>=1.4",
        "langchain-core>=0.1.0",
        "python-dotenv>=1.0.0"
    ],
    extras_require={
        "plot": ["matplotlib>=3.5"],
        "test": ["pytest>=7.0"],
    },
    entry_points={
        "console_scripts": ["quls-arma=quls_arma.cli:main"],
    },
    author="James Barney",
    author_email="your.email@example.com",
    description="Quantile unit-log-symmetric ARMA models for bounded time series",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.9",
)
