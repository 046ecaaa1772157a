#include <iostream>
#include <set>
#include <string>

#include "acceptance.hpp"

// Usage: autseq-acceptance [criterion ...]
int main(int argc, char** argv) {
	std::set<int> only;
	for (int i = 1; i < argc; ++i) {
		try {
			only.insert(std::stoi(argv[i]));
		} catch (const std::logic_error&) {
			std::cerr << "usage: autseq-acceptance [criterion ...]\n";
			return 2;
		}
	}
	return autseq::acceptance::run(std::cout, only) == 0 ? 0 : 1;
}
