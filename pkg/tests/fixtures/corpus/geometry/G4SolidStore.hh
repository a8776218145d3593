#ifndef G4SOLIDSTORE_HH
#define G4SOLIDSTORE_HH

#include <vector>

class G4VSolid;

// Singleton container of all solids.
class G4SolidStore : public std::vector<G4VSolid*>
{
  public:
    static G4SolidStore* GetInstance();
    void Register(G4VSolid* s);
    void DeRegister(G4VSolid* s);

  private:
    G4SolidStore();
    static G4SolidStore* fgInstance;
    static G4ThreadLocal G4bool locked;
};

#endif
